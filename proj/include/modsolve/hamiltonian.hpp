#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "modsolve/digraph.hpp"
#include "modsolve/ilp.hpp"
#include "modsolve/modular.hpp"
#include "modsolve/solver_common.hpp"

namespace modsolve {

inline constexpr int ham_default_max_quotient = 12;

// Minimum number of vertex-disjoint directed paths covering every vertex, with
// one witness path per entry. A Hamiltonian path exists exactly when count == 1.
struct PathPartitionResult {
    long long count = 0;
    std::vector<std::vector<int>> paths;
};

inline bool is_path_partition(const Digraph& d, const std::vector<std::vector<int>>& paths) {
    std::vector<int> seen;
    for (const auto& p : paths) {
        if (!is_path_sequence(d, p)) return false;
        seen.insert(seen.end(), p.begin(), p.end());
    }
    std::sort(seen.begin(), seen.end());
    if (static_cast<int>(seen.size()) != d.num_vertices()) return false;
    for (int v = 0; v < d.num_vertices(); ++v)
        if (seen[v] != v) return false;
    return true;
}

namespace detail {

// Integer program deciding whether a closed walk through the quotient can be
// expanded to a spanning cycle. Variables are one flow count per quotient edge
// followed by one visit count per block; a walk entering a block k times cuts
// that block into exactly k covered paths, so k must lie between the block's
// path partition number and its size. Rows force flow balance at every block
// and at least one used edge out of every proper nonempty block subset, which
// makes the support strongly connected and therefore Eulerian.
struct CycleProgram {
    IlpProblem ilp;
    int num_edges = 0;
};

inline CycleProgram cycle_program(const Digraph& q, const std::vector<long long>& visit_lo,
                                  const std::vector<long long>& visit_hi) {
    const int l = q.num_vertices();
    const auto edges = q.edges();
    CycleProgram out;
    out.num_edges = static_cast<int>(edges.size());
    auto& p = out.ilp;
    for (auto [u, v] : edges)
        p.bounds.push_back({0, std::min(visit_hi[u], visit_hi[v])});
    for (int i = 0; i < l; ++i) p.bounds.push_back({visit_lo[i], visit_hi[i]});
    p.objective.assign(p.bounds.size(), 0);
    for (int i = 0; i < l; ++i) {
        IlpRow balance_out{{}, RowSense::eq, 0};
        IlpRow balance_in{{}, RowSense::eq, 0};
        for (int e = 0; e < out.num_edges; ++e) {
            if (edges[e].first == i) balance_out.terms.push_back({e, 1});
            if (edges[e].second == i) balance_in.terms.push_back({e, 1});
        }
        balance_out.terms.push_back({out.num_edges + i, -1});
        balance_in.terms.push_back({out.num_edges + i, -1});
        p.rows.push_back(std::move(balance_out));
        p.rows.push_back(std::move(balance_in));
    }
    const std::uint32_t full = (1u << l) - 1;
    for (std::uint32_t x = 1; x < full; ++x) {
        IlpRow leave{{}, RowSense::ge, 1};
        for (int e = 0; e < out.num_edges; ++e)
            if ((x >> edges[e].first & 1) && !(x >> edges[e].second & 1))
                leave.terms.push_back({e, 1});
        p.rows.push_back(std::move(leave));  // empty term list means the subset is inescapable
    }
    return out;
}

// The quotient plus one fresh block joined to everything by digons. Entering
// the fresh block s times while it holds s isolated vertices is exactly a
// partition of the original graph into s covered paths.
inline Digraph extend_quotient(const Digraph& q) {
    const int l = q.num_vertices();
    auto edges = q.edges();
    for (int i = 0; i < l; ++i) {
        edges.push_back({i, l});
        edges.push_back({l, i});
    }
    return Digraph(l + 1, std::move(edges));
}

inline std::vector<int> euler_circuit(int n, std::vector<std::vector<int>> adj, int start) {
    std::vector<std::size_t> next(n, 0);
    std::vector<int> stack{start};
    std::vector<int> circuit;
    while (!stack.empty()) {
        int v = stack.back();
        if (next[v] < adj[v].size()) {
            stack.push_back(adj[v][next[v]++]);
        } else {
            circuit.push_back(v);
            stack.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    return circuit;  // closed: front == back == start, one entry per edge plus one
}

// Walk the closed circuit, replacing the j-th entry into each block by the j-th
// path of that block's cover. A boundary block (or -1 for none) starts a new
// output segment instead of contributing vertices.
inline std::vector<std::vector<int>> splice_circuit(
        const std::vector<int>& circuit,
        const std::vector<std::vector<std::vector<int>>>& parts, int boundary) {
    std::vector<std::size_t> next(parts.size(), 0);
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    for (std::size_t t = 0; t + 1 < circuit.size(); ++t) {
        const int b = circuit[t];
        if (b == boundary) {
            if (t > 0) {
                out.push_back(std::move(cur));
                cur.clear();
            }
            continue;
        }
        if (next[b] >= parts[b].size())
            throw std::logic_error("circuit splice ran out of cover paths");
        const auto& p = parts[b][next[b]++];
        cur.insert(cur.end(), p.begin(), p.end());
    }
    out.push_back(std::move(cur));
    for (std::size_t b = 0; b < parts.size(); ++b)
        if (next[b] != parts[b].size())
            throw std::logic_error("circuit splice left unused cover paths");
    return out;
}

inline long long node_path_number(const DecompositionTree& tree, int id, const SolveOptions& opts,
                                  std::vector<long long>& memo) {
    if (memo[id] >= 0) return memo[id];
    const auto& node = tree.nodes[id];
    if (node.children.empty()) return memo[id] = 1;
    const int l = static_cast<int>(node.children.size());
    check_quotient("path_partition", l, ham_default_max_quotient, opts);
    std::vector<long long> lo(l + 1), hi(l + 1);
    for (int i = 0; i < l; ++i) {
        lo[i] = node_path_number(tree, node.children[i], opts, memo);
        hi[i] = static_cast<long long>(tree.nodes[node.children[i]].vertices.size());
    }
    lo[l] = 1;
    hi[l] = static_cast<long long>(node.vertices.size());
    auto cp = cycle_program(extend_quotient(*node.quotient), lo, hi);
    cp.ilp.objective[cp.num_edges + l] = 1;
    auto sol = solve_ilp(cp.ilp);
    if (!sol) throw std::logic_error("path partition program lost its fallback solution");
    return memo[id] = sol->value;
}

// Exactly `count` vertex-disjoint paths covering the node, as original vertex
// ids. Valid for any count between the node's path partition number and its
// vertex count.
inline std::vector<std::vector<int>> build_cover(const DecompositionTree& tree, int id,
                                                 long long count, const SolveOptions& opts,
                                                 std::vector<long long>& memo) {
    const auto& node = tree.nodes[id];
    if (node.children.empty()) {
        if (count != 1) throw std::logic_error("single vertex asked for an impossible cover size");
        return {{node.vertices[0]}};
    }
    const int l = static_cast<int>(node.children.size());
    check_quotient("path_partition", l, ham_default_max_quotient, opts);
    std::vector<long long> lo(l + 1), hi(l + 1);
    for (int i = 0; i < l; ++i) {
        lo[i] = node_path_number(tree, node.children[i], opts, memo);
        hi[i] = static_cast<long long>(tree.nodes[node.children[i]].vertices.size());
    }
    lo[l] = hi[l] = count;
    const Digraph extended = extend_quotient(*node.quotient);
    auto cp = cycle_program(extended, lo, hi);
    auto assignment = ilp_feasible(cp.ilp);
    if (!assignment) throw std::logic_error("requested cover size is outside the feasible range");
    const auto edges = extended.edges();
    std::vector<std::vector<int>> adj(l + 1);
    for (int e = 0; e < cp.num_edges; ++e)
        for (long long c = 0; c < (*assignment)[e]; ++c)
            adj[edges[e].first].push_back(edges[e].second);
    for (auto& a : adj) std::sort(a.begin(), a.end());
    long long total_flow = 0;
    for (int e = 0; e < cp.num_edges; ++e) total_flow += (*assignment)[e];
    auto circuit = euler_circuit(l + 1, std::move(adj), l);
    if (static_cast<long long>(circuit.size()) != total_flow + 1)
        throw std::logic_error("edge flow support is not a single closed walk");
    std::vector<std::vector<std::vector<int>>> parts(l);
    for (int i = 0; i < l; ++i)
        parts[i] = build_cover(tree, node.children[i], (*assignment)[cp.num_edges + i], opts, memo);
    auto out = splice_circuit(circuit, parts, l);
    if (opts.audit) {
        audit_check(static_cast<long long>(out.size()) == count,
                    "cover has the requested number of paths");
        std::vector<int> all;
        for (const auto& p : out) {
            audit_check(!p.empty(), "cover paths are nonempty");
            std::vector<int> local;
            local.reserve(p.size());
            for (int v : p) local.push_back(node_local_id(node, v));
            audit_check(is_path_sequence(node.graph, local),
                        "spliced sequence is a path of the block graph");
            all.insert(all.end(), p.begin(), p.end());
        }
        std::sort(all.begin(), all.end());
        audit_check(all == node.vertices, "cover paths partition the block");
    }
    return out;
}

}  // namespace detail

inline PathPartitionResult solve_path_partition(const DecompositionTree& tree,
                                                const SolveOptions& opts = {}) {
    std::vector<long long> memo(tree.nodes.size(), -1);
    PathPartitionResult result;
    result.count = detail::node_path_number(tree, tree.root, opts, memo);
    result.paths = detail::build_cover(tree, tree.root, result.count, opts, memo);
    return result;
}

inline PathPartitionResult solve_path_partition(const Digraph& d, const SolveOptions& opts = {}) {
    return solve_path_partition(decomposition_tree(d), opts);
}

inline bool has_hamiltonian_path(const Digraph& d, const SolveOptions& opts = {}) {
    return solve_path_partition(d, opts).count == 1;
}

// Spanning cycle witness, or nullopt when none exists. A single vertex has no
// loop available, so it never carries a spanning cycle.
inline std::optional<std::vector<int>> solve_hamiltonian_cycle(const DecompositionTree& tree,
                                                               const SolveOptions& opts = {}) {
    const auto& root = tree.nodes[tree.root];
    if (root.children.empty()) return std::nullopt;
    const int l = static_cast<int>(root.children.size());
    detail::check_quotient("hamiltonian_cycle", l, ham_default_max_quotient, opts);
    std::vector<long long> memo(tree.nodes.size(), -1);
    std::vector<long long> lo(l), hi(l);
    for (int i = 0; i < l; ++i) {
        lo[i] = detail::node_path_number(tree, root.children[i], opts, memo);
        hi[i] = static_cast<long long>(tree.nodes[root.children[i]].vertices.size());
    }
    auto cp = detail::cycle_program(*root.quotient, lo, hi);
    auto assignment = ilp_feasible(cp.ilp);
    if (!assignment) return std::nullopt;
    const auto edges = root.quotient->edges();
    std::vector<std::vector<int>> adj(l);
    for (int e = 0; e < cp.num_edges; ++e)
        for (long long c = 0; c < (*assignment)[e]; ++c)
            adj[edges[e].first].push_back(edges[e].second);
    for (auto& a : adj) std::sort(a.begin(), a.end());
    long long total_flow = 0;
    for (int e = 0; e < cp.num_edges; ++e) total_flow += (*assignment)[e];
    auto circuit = detail::euler_circuit(l, std::move(adj), 0);
    if (static_cast<long long>(circuit.size()) != total_flow + 1)
        throw std::logic_error("edge flow support is not a single closed walk");
    std::vector<std::vector<std::vector<int>>> parts(l);
    for (int i = 0; i < l; ++i)
        parts[i] = detail::build_cover(tree, root.children[i], (*assignment)[cp.num_edges + i],
                                       opts, memo);
    auto segments = detail::splice_circuit(circuit, parts, -1);
    if (opts.audit) {
        detail::audit_check(segments.size() == 1, "cycle splice yields a single closed sequence");
        detail::audit_check(is_cycle_sequence(root.graph, segments[0]),
                            "spliced sequence is a spanning cycle");
    }
    return segments[0];
}

inline std::optional<std::vector<int>> solve_hamiltonian_cycle(const Digraph& d,
                                                               const SolveOptions& opts = {}) {
    return solve_hamiltonian_cycle(decomposition_tree(d), opts);
}

inline bool has_hamiltonian_cycle(const Digraph& d, const SolveOptions& opts = {}) {
    return solve_hamiltonian_cycle(d, opts).has_value();
}

}  // namespace modsolve
