#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modsolve/digraph.hpp"

namespace modsolve {

enum class ModuleKind { leaf, parallel, series, order, prime };

inline const char* to_string(ModuleKind k) {
    switch (k) {
        case ModuleKind::leaf: return "leaf";
        case ModuleKind::parallel: return "parallel";
        case ModuleKind::series: return "series";
        case ModuleKind::order: return "order";
        case ModuleKind::prime: return "prime";
    }
    return "?";
}

namespace detail {

// Pairwise relation codes, stored as bits: 1 = edge u->v, 2 = edge v->u.
using RelMatrix = std::vector<unsigned char>;

inline RelMatrix relation_matrix(const Digraph& d) {
    const int n = d.num_vertices();
    RelMatrix rel(static_cast<size_t>(n) * n, 0);
    for (int u = 0; u < n; ++u)
        for (int v : d.out_neighbors(u)) {
            rel[static_cast<size_t>(u) * n + v] |= 1;
            rel[static_cast<size_t>(v) * n + u] |= 2;
        }
    return rel;
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

// Connected components of the symmetric relation `adj`, listed by smallest member,
// members ascending.
template <class Adj>
std::vector<std::vector<int>> relation_components(int n, Adj adj) {
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> members = {s};
        comp[s] = static_cast<int>(comps.size());
        std::vector<int> stack = {s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v)
                if (comp[v] == -1 && adj(u, v)) {
                    comp[v] = comp[s];
                    members.push_back(v);
                    stack.push_back(v);
                }
        }
        std::sort(members.begin(), members.end());
        comps.push_back(std::move(members));
    }
    return comps;
}

}  // namespace detail

// True when every vertex outside `verts` relates to all members uniformly (edges to
// all of them or none, and edges from all of them or none).
inline bool is_module(const Digraph& d, const std::vector<int>& verts) {
    const int n = d.num_vertices();
    if (verts.empty()) return false;
    std::vector<char> in_set(n, 0);
    for (int v : verts) {
        if (v < 0 || v >= n) return false;
        if (in_set[v]) return false;
        in_set[v] = 1;
    }
    const int size = static_cast<int>(verts.size());
    for (int z = 0; z < n; ++z) {
        if (in_set[z]) continue;
        int out_hits = 0, in_hits = 0;
        for (int w : d.out_neighbors(z)) out_hits += in_set[w];
        for (int w : d.in_neighbors(z)) in_hits += in_set[w];
        if (out_hits != 0 && out_hits != size) return false;
        if (in_hits != 0 && in_hits != size) return false;
    }
    return true;
}

struct ModulePartition {
    ModuleKind kind = ModuleKind::prime;
    std::vector<std::vector<int>> blocks;
};

namespace detail {

// Coarsest partition realizing a linear arrangement where every class pair is joined
// completely in one direction. Starts from components of "digon or non-edge" and
// alternates two forced moves until stable: classes whose cross relation is not
// uniformly one-directional must merge, and directed cycles among classes must merge.
inline std::optional<std::vector<std::vector<int>>> order_classes(const RelMatrix& rel, int n) {
    Dsu dsu(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            unsigned char r = rel[static_cast<size_t>(u) * n + v];
            if (r == 0 || r == 3) dsu.unite(u, v);
        }
    while (true) {
        std::vector<int> roots;
        std::vector<int> idx(n, -1);
        for (int v = 0; v < n; ++v)
            if (dsu.find(v) == v) {
                idx[v] = static_cast<int>(roots.size());
                roots.push_back(v);
            }
        const int l = static_cast<int>(roots.size());
        if (l == 1) return std::nullopt;
        // mask bits per class pair (a<b): 1 = a->b seen, 2 = b->a seen, 4 = bad pair
        std::vector<unsigned char> mask(static_cast<size_t>(l) * l, 0);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                int a = idx[dsu.find(u)], b = idx[dsu.find(v)];
                if (a == b) continue;
                unsigned char r = rel[static_cast<size_t>(u) * n + v];
                unsigned char bit = (r == 0 || r == 3) ? 4 : (r == 1 ? 1 : 2);
                if (a > b) {
                    std::swap(a, b);
                    if (bit != 4) bit ^= 3;
                }
                mask[static_cast<size_t>(a) * l + b] |= bit;
            }
        bool changed = false;
        for (int a = 0; a < l; ++a)
            for (int b = a + 1; b < l; ++b) {
                unsigned char m = mask[static_cast<size_t>(a) * l + b];
                if (m == 1 || m == 2) continue;
                changed |= dsu.unite(roots[a], roots[b]);
            }
        if (changed) continue;
        std::vector<Edge> tedges;
        for (int a = 0; a < l; ++a)
            for (int b = a + 1; b < l; ++b)
                if (mask[static_cast<size_t>(a) * l + b] == 1)
                    tedges.emplace_back(a, b);
                else
                    tedges.emplace_back(b, a);
        Digraph tournament(l, std::move(tedges));
        for (const auto& scc : strongly_connected_components(tournament))
            if (scc.size() > 1)
                for (size_t i = 1; i < scc.size(); ++i)
                    changed |= dsu.unite(roots[scc[0]], roots[scc[i]]);
        if (changed) continue;
        // transitive tournament: sort classes source-first by out-degree
        std::vector<int> outdeg(l, 0);
        for (int a = 0; a < l; ++a)
            for (int b = a + 1; b < l; ++b)
                ++outdeg[mask[static_cast<size_t>(a) * l + b] == 1 ? a : b];
        std::vector<char> seen(l, 0);
        for (int a = 0; a < l; ++a) {
            int pos = l - 1 - outdeg[a];
            if (pos < 0 || pos >= l || seen[pos])
                throw std::logic_error("order classes do not form a transitive tournament");
            seen[pos] = 1;
        }
        std::vector<std::vector<int>> classes(l);
        for (int v = 0; v < n; ++v) classes[l - 1 - outdeg[idx[dsu.find(v)]]].push_back(v);
        for (auto& c : classes) std::sort(c.begin(), c.end());
        return classes;
    }
}

// Smallest module containing {u, w}: grow while some outside vertex distinguishes
// two members. Returns all n vertices when no proper module exists.
inline std::vector<int> pair_closure(const RelMatrix& rel, int n, int u, int w) {
    std::vector<char> mem(n, 0);
    std::vector<int> list = {u, w};
    mem[u] = mem[w] = 1;
    for (size_t i = 1; i < list.size() && static_cast<int>(list.size()) < n; ++i) {
        int x = list[i];
        for (int z = 0; z < n; ++z) {
            if (mem[z]) continue;
            if (rel[static_cast<size_t>(z) * n + x] != rel[static_cast<size_t>(z) * n + u]) {
                mem[z] = 1;
                list.push_back(z);
            }
        }
    }
    return list;
}

inline std::vector<std::vector<int>> prime_classes(const RelMatrix& rel, int n) {
    std::vector<int> class_of(n, -1);
    std::vector<std::vector<int>> blocks;
    for (int u = 0; u < n; ++u) {
        if (class_of[u] != -1) continue;
        int id = static_cast<int>(blocks.size());
        std::vector<int> members = {u};
        class_of[u] = id;
        for (int w = 0; w < n; ++w) {
            if (class_of[w] != -1 || w == u) continue;
            auto closure = pair_closure(rel, n, u, w);
            if (static_cast<int>(closure.size()) == n) continue;
            for (int x : closure)
                if (class_of[x] == -1) {
                    class_of[x] = id;
                    members.push_back(x);
                } else if (class_of[x] != id) {
                    throw std::logic_error("prime closure crossed an earlier class");
                }
        }
        std::sort(members.begin(), members.end());
        blocks.push_back(std::move(members));
    }
    return blocks;
}

inline std::vector<int> merge_tail(const std::vector<std::vector<int>>& groups) {
    std::vector<int> rest;
    for (size_t i = 1; i < groups.size(); ++i)
        rest.insert(rest.end(), groups[i].begin(), groups[i].end());
    std::sort(rest.begin(), rest.end());
    return rest;
}

}  // namespace detail

// Canonical proper module partition of a digraph with at least two vertices.
// Degenerate kinds are binarized: the distinguished first group (component with the
// smallest vertex, or the first class of the linear arrangement) against the rest.
// The prime kind returns all maximal proper strong modules, ordered by smallest
// member.
inline ModulePartition nontrivial_modular_partition(const Digraph& d) {
    const int n = d.num_vertices();
    if (n < 2) throw std::invalid_argument("modular partition needs at least two vertices");
    auto rel = detail::relation_matrix(d);
    auto rel_at = [&](int u, int v) { return rel[static_cast<size_t>(u) * n + v]; };

    auto comps = detail::relation_components(n, [&](int u, int v) { return rel_at(u, v) != 0; });
    if (comps.size() >= 2)
        return {ModuleKind::parallel, {comps[0], detail::merge_tail(comps)}};

    comps = detail::relation_components(n, [&](int u, int v) { return rel_at(u, v) != 3; });
    if (comps.size() >= 2) return {ModuleKind::series, {comps[0], detail::merge_tail(comps)}};

    if (auto classes = detail::order_classes(rel, n))
        return {ModuleKind::order, {(*classes)[0], detail::merge_tail(*classes)}};

    auto blocks = detail::prime_classes(rel, n);
    if (blocks.size() < 3) throw std::logic_error("prime partition with fewer than three blocks");
    return {ModuleKind::prime, std::move(blocks)};
}

struct Quotient {
    Digraph digraph;
    std::vector<int> block_of;
};

// Quotient by a partition into modules. Vertex i of the quotient stands for
// blocks[i]; an edge i->j exists when every vertex of block i has an edge to every
// vertex of block j. Throws when the blocks do not partition the vertices or some
// cross pair is not joined uniformly.
inline Quotient module_digraph(const Digraph& d, const std::vector<std::vector<int>>& blocks) {
    const int n = d.num_vertices();
    const int l = static_cast<int>(blocks.size());
    std::vector<int> block_of(n, -1);
    for (int i = 0; i < l; ++i) {
        if (blocks[i].empty()) throw std::invalid_argument("quotient block is empty");
        for (int v : blocks[i]) {
            if (v < 0 || v >= n) throw std::invalid_argument("quotient block vertex out of range");
            if (block_of[v] != -1) throw std::invalid_argument("quotient blocks overlap");
            block_of[v] = i;
        }
    }
    for (int v = 0; v < n; ++v)
        if (block_of[v] == -1) throw std::invalid_argument("quotient blocks miss a vertex");

    auto rel = detail::relation_matrix(d);
    std::vector<int> rep(l);
    for (int i = 0; i < l; ++i) rep[i] = *std::min_element(blocks[i].begin(), blocks[i].end());
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v || block_of[u] == block_of[v]) continue;
            auto expected = rel[static_cast<size_t>(rep[block_of[u]]) * n + rep[block_of[v]]];
            if (rel[static_cast<size_t>(u) * n + v] != expected)
                throw std::invalid_argument("blocks are not modules joined uniformly");
        }
    std::vector<Edge> qedges;
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            if (i != j && (rel[static_cast<size_t>(rep[i]) * n + rep[j]] & 1))
                qedges.emplace_back(i, j);
    return {Digraph(l, std::move(qedges)), std::move(block_of)};
}

struct DecompNode {
    ModuleKind kind;
    std::vector<int> vertices;        // original ids, ascending
    Digraph graph;                    // induced subgraph; local id = rank in `vertices`
    std::vector<int> children;        // node indices, in block order
    std::optional<Digraph> quotient;  // on children.size() vertices (internal nodes)
    std::vector<int> block_of;        // local vertex id -> child position (internal nodes)
};

struct DecompositionTree {
    std::vector<DecompNode> nodes;
    int root = 0;
};

namespace detail {

inline int node_local_id(const DecompNode& node, int original_vertex) {
    auto it = std::lower_bound(node.vertices.begin(), node.vertices.end(), original_vertex);
    return static_cast<int>(it - node.vertices.begin());
}

inline int build_tree(DecompositionTree& tree, Digraph graph, std::vector<int> vertices) {
    int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(
        {ModuleKind::leaf, std::move(vertices), std::move(graph), {}, std::nullopt, {}});
    if (tree.nodes[id].graph.num_vertices() == 1) return id;

    auto part = nontrivial_modular_partition(tree.nodes[id].graph);
    auto quot = module_digraph(tree.nodes[id].graph, part.blocks);
    std::vector<int> children;
    for (const auto& block : part.blocks) {
        std::vector<int> child_orig;
        child_orig.reserve(block.size());
        for (int local : block) child_orig.push_back(tree.nodes[id].vertices[local]);
        Digraph child_graph = induced_subgraph(tree.nodes[id].graph, block);
        children.push_back(build_tree(tree, std::move(child_graph), std::move(child_orig)));
    }
    auto& node = tree.nodes[id];
    node.kind = part.kind;
    node.children = std::move(children);
    node.quotient = std::move(quot.digraph);
    node.block_of = std::move(quot.block_of);
    return id;
}

}  // namespace detail

inline DecompositionTree decomposition_tree(const Digraph& d) {
    DecompositionTree tree;
    std::vector<int> vertices(d.num_vertices());
    std::iota(vertices.begin(), vertices.end(), 0);
    detail::build_tree(tree, d, std::move(vertices));
    return tree;
}

// Directed modular width: 1 for a single vertex, otherwise the largest quotient a
// prime node needs (and never less than 2).
inline int modular_width(const DecompositionTree& tree) {
    if (tree.nodes.size() == 1) return 1;
    int w = 2;
    for (const auto& node : tree.nodes)
        if (node.kind == ModuleKind::prime)
            w = std::max(w, static_cast<int>(node.children.size()));
    return w;
}

inline int modular_width(const Digraph& d) { return modular_width(decomposition_tree(d)); }

inline bool is_directed_cograph(const Digraph& d) { return modular_width(d) <= 2; }

}  // namespace modsolve
