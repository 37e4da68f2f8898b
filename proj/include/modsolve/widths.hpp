#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "modsolve/digraph.hpp"
#include "modsolve/modular.hpp"
#include "modsolve/solver_common.hpp"

namespace modsolve {

inline constexpr int dpw_default_max_quotient = 18;
inline constexpr int cycle_rank_default_max_quotient = 20;

// ---- directed path-width -------------------------------------------------------------

struct DirectedPathDecomposition {
    long long width = 0;
    std::vector<std::vector<int>> bags;  // each sorted ascending
};

// Checks the three defining conditions: bags cover every vertex, each vertex
// occupies a contiguous run of bags, and every edge u->v has the first bag
// holding u no later than the last bag holding v. Bags must be sorted sets.
inline bool validate_dpd(const Digraph& d, const std::vector<std::vector<int>>& bags) {
    const int n = d.num_vertices();
    std::vector<int> first(n, -1), last(n, -1), count(n, 0);
    for (int i = 0; i < static_cast<int>(bags.size()); ++i) {
        const auto& bag = bags[i];
        if (!std::is_sorted(bag.begin(), bag.end())) return false;
        if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) return false;
        for (int v : bag) {
            if (v < 0 || v >= n) return false;
            if (first[v] < 0) first[v] = i;
            last[v] = i;
            ++count[v];
        }
    }
    for (int v = 0; v < n; ++v) {
        if (first[v] < 0) return false;
        if (count[v] != last[v] - first[v] + 1) return false;
    }
    for (auto [u, v] : d.edges())
        if (first[u] > last[v]) return false;
    return true;
}

namespace detail {

struct NodeDpw {
    long long width = 0;
    std::vector<std::vector<int>> bags;  // original vertex ids
};

inline const NodeDpw& node_dpw(const DecompositionTree& tree, int id, const SolveOptions& opts,
                               std::map<int, NodeDpw>& memo) {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const auto& node = tree.nodes[id];
    NodeDpw out;
    if (node.children.empty()) {
        out.width = 0;
        out.bags = {{node.vertices[0]}};
        return memo.emplace(id, std::move(out)).first->second;
    }
    const int l = static_cast<int>(node.children.size());
    check_quotient("directed_pathwidth", l, dpw_default_max_quotient, opts);
    const Digraph& q = *node.quotient;

    std::vector<long long> whole_cost(l), split_cost(l);
    std::vector<const NodeDpw*> child(l);
    for (int i = 0; i < l; ++i) {
        child[i] = &node_dpw(tree, node.children[i], opts, memo);
        whole_cost[i] = static_cast<long long>(tree.nodes[node.children[i]].vertices.size());
        split_cost[i] = child[i]->width + 1;
    }
    std::vector<std::uint32_t> out_mask(l, 0);
    for (int i = 0; i < l; ++i)
        for (int j : q.out_neighbors(i)) out_mask[i] |= 1u << j;
    const std::uint32_t full = (1u << l) - 1;

    // Bag size when block v closes right after `closed`: every open block with
    // an edge into the closed part must already sit in the bag whole, and the
    // closer contributes its own decomposition bags while it has no edge into
    // the closed part, its whole module otherwise.
    auto step_cost = [&](std::uint32_t closed, int v) {
        const std::uint32_t after = closed | (1u << v);
        long long sum = (out_mask[v] & closed) ? whole_cost[v] : split_cost[v];
        for (int x = 0; x < l; ++x)
            if (!(after >> x & 1) && (out_mask[x] & after)) sum += whole_cost[x];
        return sum;
    };

    // g[c] = smallest achievable maximum bag size over closing orders that
    // close exactly the blocks of c first.
    std::vector<long long> g(full + 1, 0);
    std::vector<int> pick(full + 1, -1);
    for (std::uint32_t c = 1; c <= full; ++c) {
        long long best = std::numeric_limits<long long>::max();
        int arg = -1;
        bool arg_split = false;
        for (int v = 0; v < l; ++v) {
            if (!(c >> v & 1)) continue;
            const std::uint32_t prev = c ^ (1u << v);
            const long long val = std::max(g[prev], step_cost(prev, v));
            const bool split = !(out_mask[v] & prev);
            if (val < best || (val == best && split && !arg_split)) {
                best = val;
                arg = v;
                arg_split = split;
            }
        }
        g[c] = best;
        pick[c] = arg;
    }

    std::vector<int> order;
    for (std::uint32_t c = full; c; c ^= 1u << order.back()) order.push_back(pick[c]);
    std::reverse(order.begin(), order.end());

    std::uint32_t closed = 0;
    for (int v : order) {
        const std::uint32_t after = closed | (1u << v);
        std::vector<int> surround;
        for (int x = 0; x < l; ++x)
            if (!(after >> x & 1) && (out_mask[x] & after)) {
                const auto& mod = tree.nodes[node.children[x]].vertices;
                surround.insert(surround.end(), mod.begin(), mod.end());
            }
        if (out_mask[v] & closed) {
            std::vector<int> bag = surround;
            const auto& mod = tree.nodes[node.children[v]].vertices;
            bag.insert(bag.end(), mod.begin(), mod.end());
            std::sort(bag.begin(), bag.end());
            out.bags.push_back(std::move(bag));
        } else {
            for (const auto& child_bag : child[v]->bags) {
                std::vector<int> bag = surround;
                bag.insert(bag.end(), child_bag.begin(), child_bag.end());
                std::sort(bag.begin(), bag.end());
                out.bags.push_back(std::move(bag));
            }
        }
        closed = after;
    }
    out.width = g[full] - 1;

    if (opts.audit) {
        std::vector<std::vector<int>> local;
        long long widest = 0;
        for (const auto& bag : out.bags) {
            std::vector<int> lb;
            for (int v : bag) lb.push_back(node_local_id(node, v));
            widest = std::max(widest, static_cast<long long>(lb.size()));
            local.push_back(std::move(lb));
        }
        audit_check(validate_dpd(node.graph, local),
                    "expanded bags form a directed path decomposition");
        audit_check(widest - 1 == out.width, "decomposition width matches the computed value");
    }
    return memo.emplace(id, std::move(out)).first->second;
}

}  // namespace detail

inline DirectedPathDecomposition directed_pathwidth(const DecompositionTree& tree,
                                                    const SolveOptions& opts = {}) {
    std::map<int, detail::NodeDpw> memo;
    const auto& root = detail::node_dpw(tree, tree.root, opts, memo);
    return {root.width, root.bags};
}

inline DirectedPathDecomposition directed_pathwidth(const Digraph& d,
                                                    const SolveOptions& opts = {}) {
    return directed_pathwidth(decomposition_tree(d), opts);
}

// ---- cycle rank ----------------------------------------------------------------------

struct EliminationForest {
    struct Node {
        int vertex = -1;
        std::vector<int> children;  // indices into nodes
    };
    std::vector<Node> nodes;
    std::vector<int> roots;
};

struct OrderingRank {
    long long rank = 0;  // most vertices on any root-to-leaf path
    EliminationForest forest;
};

// Builds the elimination forest of an ordering: split into strongly connected
// components (sinks first), root each component at its ordering-smallest
// vertex, and recurse on the component minus its root.
inline OrderingRank rank_of_ordering(const Digraph& d, const std::vector<int>& sigma) {
    const int n = d.num_vertices();
    std::vector<int> pos(n, -1);
    if (static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument("ordering must list every vertex exactly once");
    for (int i = 0; i < n; ++i) {
        if (sigma[i] < 0 || sigma[i] >= n || pos[sigma[i]] != -1)
            throw std::invalid_argument("ordering must list every vertex exactly once");
        pos[sigma[i]] = i;
    }
    OrderingRank out;
    if (n == 0) return out;
    struct Part {
        std::vector<int> roots;
        long long depth = 0;
    };
    auto build = [&](auto&& self, const std::vector<int>& verts) -> Part {
        if (verts.size() == 1) {
            out.forest.nodes.push_back({verts[0], {}});
            return {{static_cast<int>(out.forest.nodes.size()) - 1}, 1};
        }
        const Digraph sub = induced_subgraph(d, verts);
        const auto comps = strongly_connected_components(sub);
        if (comps.size() > 1) {
            Part merged;
            for (const auto& comp : comps) {
                std::vector<int> part;
                for (int lv : comp) part.push_back(verts[lv]);
                Part p = self(self, part);
                merged.roots.insert(merged.roots.end(), p.roots.begin(), p.roots.end());
                merged.depth = std::max(merged.depth, p.depth);
            }
            return merged;
        }
        const int root = *std::min_element(verts.begin(), verts.end(),
                                           [&](int a, int b) { return pos[a] < pos[b]; });
        std::vector<int> rest;
        for (int v : verts) {
            if (v != root) rest.push_back(v);
        }
        Part below = self(self, rest);
        out.forest.nodes.push_back({root, std::move(below.roots)});
        return {{static_cast<int>(out.forest.nodes.size()) - 1}, below.depth + 1};
    };
    std::vector<int> all(n);
    for (int v = 0; v < n; ++v) all[v] = v;
    Part top = build(build, all);
    out.forest.roots = std::move(top.roots);
    out.rank = top.depth;
    return out;
}

struct CycleRankResult {
    long long rank = 0;
    std::vector<int> ordering;
    EliminationForest forest;
};

namespace detail {

// Components of the quotient restricted to `mask`, every edge between two
// components pointing at an earlier entry of the result.
inline std::vector<std::uint32_t> mask_components(const std::vector<std::uint32_t>& out_mask,
                                                  std::uint32_t mask) {
    const int l = static_cast<int>(out_mask.size());
    std::vector<std::uint32_t> reach(l, 0);
    for (int v = 0; v < l; ++v) {
        if (!(mask >> v & 1)) continue;
        std::uint32_t r = 1u << v;
        for (;;) {
            std::uint32_t grown = r;
            for (int u = 0; u < l; ++u)
                if (r >> u & 1) grown |= out_mask[u] & mask;
            if (grown == r) break;
            r = grown;
        }
        reach[v] = r;
    }
    std::vector<std::uint32_t> comps;
    std::uint32_t assigned = 0;
    for (int v = 0; v < l; ++v) {
        if (!(mask >> v & 1) || (assigned >> v & 1)) continue;
        std::uint32_t comp = 0;
        for (int u = 0; u < l; ++u)
            if ((mask >> u & 1) && (reach[v] >> u & 1) && (reach[u] >> v & 1)) comp |= 1u << u;
        comps.push_back(comp);
        assigned |= comp;
    }
    std::vector<std::uint32_t> ordered;
    std::vector<char> placed(comps.size(), 0);
    std::uint32_t placed_mask = 0;
    while (ordered.size() < comps.size()) {
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (placed[i]) continue;
            std::uint32_t outgoing = 0;
            for (int u = 0; u < l; ++u)
                if (comps[i] >> u & 1) outgoing |= out_mask[u] & mask & ~comps[i];
            if (outgoing & ~placed_mask) continue;
            placed[i] = 1;
            placed_mask |= comps[i];
            ordered.push_back(comps[i]);
            break;
        }
    }
    return ordered;
}

struct NodeRank {
    long long rank = 0;
    std::vector<int> ordering;  // original vertex ids
};

inline const NodeRank& node_cycle_rank(const DecompositionTree& tree, int id,
                                       const SolveOptions& opts, std::map<int, NodeRank>& memo) {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const auto& node = tree.nodes[id];
    NodeRank out;
    if (node.children.empty()) {
        out.rank = 0;
        out.ordering = {node.vertices[0]};
        return memo.emplace(id, std::move(out)).first->second;
    }
    const int l = static_cast<int>(node.children.size());
    check_quotient("cycle_rank", l, cycle_rank_default_max_quotient, opts);
    const Digraph& q = *node.quotient;

    std::vector<long long> whole_cost(l), child_rank(l);
    std::vector<const NodeRank*> child(l);
    for (int i = 0; i < l; ++i) {
        child[i] = &node_cycle_rank(tree, node.children[i], opts, memo);
        whole_cost[i] = static_cast<long long>(tree.nodes[node.children[i]].vertices.size());
        child_rank[i] = child[i]->rank;
    }
    std::vector<std::uint32_t> out_mask(l, 0);
    for (int i = 0; i < l; ++i)
        for (int j : q.out_neighbors(i)) out_mask[i] |= 1u << j;
    const std::uint32_t full = (1u << l) - 1;

    // A strongly connected span only decomposes once some block is deleted
    // whole, so its rank pays the block size plus the best remaining span;
    // split spans take the maximum over their components.
    std::vector<long long> val(full + 1, -1);
    std::vector<int> pick(full + 1, -1);
    auto span_rank = [&](auto&& self, std::uint32_t mask) -> long long {
        if (val[mask] >= 0) return val[mask];
        long long res;
        if (std::has_single_bit(mask)) {
            res = child_rank[std::countr_zero(mask)];
        } else {
            const auto comps = mask_components(out_mask, mask);
            if (comps.size() > 1) {
                res = 0;
                for (std::uint32_t comp : comps) res = std::max(res, self(self, comp));
            } else {
                res = std::numeric_limits<long long>::max();
                for (int v = 0; v < l; ++v) {
                    if (!(mask >> v & 1)) continue;
                    long long inner = 0;
                    for (std::uint32_t comp : mask_components(out_mask, mask ^ (1u << v)))
                        inner = std::max(inner, self(self, comp));
                    if (whole_cost[v] + inner < res) {
                        res = whole_cost[v] + inner;
                        pick[mask] = v;
                    }
                }
            }
        }
        return val[mask] = res;
    };
    out.rank = span_rank(span_rank, full);

    auto emit = [&](auto&& self, std::uint32_t mask) -> void {
        if (std::has_single_bit(mask)) {
            const auto& sub = child[std::countr_zero(mask)]->ordering;
            out.ordering.insert(out.ordering.end(), sub.begin(), sub.end());
            return;
        }
        const auto comps = mask_components(out_mask, mask);
        if (comps.size() > 1) {
            for (std::uint32_t comp : comps) self(self, comp);
            return;
        }
        const int v = pick[mask];
        const auto& mod = tree.nodes[node.children[v]].vertices;
        out.ordering.insert(out.ordering.end(), mod.begin(), mod.end());
        for (std::uint32_t comp : mask_components(out_mask, mask ^ (1u << v))) self(self, comp);
    };
    emit(emit, full);

    if (opts.audit) {
        std::vector<int> local;
        for (int v : out.ordering) local.push_back(node_local_id(node, v));
        audit_check(rank_of_ordering(node.graph, local).rank == out.rank + 1,
                    "elimination ordering realizes the computed rank");
    }
    return memo.emplace(id, std::move(out)).first->second;
}

}  // namespace detail

inline CycleRankResult cycle_rank(const DecompositionTree& tree, const SolveOptions& opts = {}) {
    std::map<int, detail::NodeRank> memo;
    const auto& root = detail::node_cycle_rank(tree, tree.root, opts, memo);
    CycleRankResult out;
    out.rank = root.rank;
    out.ordering = root.ordering;
    OrderingRank scored = rank_of_ordering(tree.nodes[tree.root].graph, out.ordering);
    if (scored.rank != out.rank + 1)
        throw std::logic_error("elimination ordering does not realize the computed rank");
    out.forest = std::move(scored.forest);
    return out;
}

inline CycleRankResult cycle_rank(const Digraph& d, const SolveOptions& opts = {}) {
    return cycle_rank(decomposition_tree(d), opts);
}

}  // namespace modsolve
