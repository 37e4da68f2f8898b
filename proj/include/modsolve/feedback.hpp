#pragma once

// Minimum-weight directed feedback vertex set, exact, parameterized by the modular
// decomposition: a node's optimum splits into its quotient's optimum (with each
// block weighted by its total weight minus its own internal optimum) plus the
// children's optima.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "modsolve/digraph.hpp"
#include "modsolve/modular.hpp"
#include "modsolve/solver_common.hpp"

namespace modsolve {

inline constexpr int fvs_default_max_quotient = 20;

struct FvsResult {
    long long weight = 0;
    std::vector<int> vertices;  // ascending
};

namespace detail {

// Max-weight induced acyclic subset of d, by subset DP over "first vertex of a
// topological order": f(S) = max(0, max_{v in S} w(v) + f(S minus v and its
// in-neighbours)). Returns the kept set (smallest eligible vertex preferred).
inline std::vector<int> max_acyclic_subset(const Digraph& d, const std::vector<long long>& w) {
    const int l = d.num_vertices();
    std::vector<std::uint32_t> in_mask(l, 0);
    for (int v = 0; v < l; ++v)
        for (int u : d.in_neighbors(v)) in_mask[v] |= 1u << u;
    const std::uint32_t full = l == 32 ? ~0u : (1u << l) - 1;
    std::vector<long long> f(full + 1ULL, 0);
    for (std::uint32_t s = 1; s <= full; ++s) {
        long long best = 0;
        for (std::uint32_t rest = s; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            best = std::max(best, w[v] + f[s & ~(1u << v) & ~in_mask[v]]);
        }
        f[s] = best;
    }
    std::vector<int> kept;
    std::uint32_t s = full;
    while (s && f[s] > 0) {
        for (std::uint32_t rest = s; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            std::uint32_t next = s & ~(1u << v) & ~in_mask[v];
            if (w[v] + f[next] == f[s]) {
                kept.push_back(v);
                s = next;
                break;
            }
        }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

struct FvsNodeResult {
    long long weight = 0;
    std::vector<int> vertices;  // original ids
};

inline FvsNodeResult fvs_rec(const DecompositionTree& tree, int node_id,
                             const std::vector<long long>& w, const SolveOptions& opts) {
    const auto& node = tree.nodes[node_id];
    if (node.kind == ModuleKind::leaf) return {0, {}};
    const int l = static_cast<int>(node.children.size());
    check_quotient("feedback_vertex_set", l, fvs_default_max_quotient, opts);

    std::vector<FvsNodeResult> child(l);
    std::vector<long long> block_weight(l, 0);
    for (int i = 0; i < l; ++i) {
        child[i] = fvs_rec(tree, node.children[i], w, opts);
        for (int orig : tree.nodes[node.children[i]].vertices)
            block_weight[i] += w[orig];
    }
    std::vector<long long> wq(l);
    for (int i = 0; i < l; ++i) {
        wq[i] = block_weight[i] - child[i].weight;
        if (opts.audit) audit_check(wq[i] >= 0, "fvs quotient weight is negative");
    }
    auto kept = max_acyclic_subset(*node.quotient, wq);
    std::vector<char> keep_block(l, 0);
    for (int i : kept) keep_block[i] = 1;

    FvsNodeResult res;
    long long kept_weight = 0;
    for (int i : kept) kept_weight += wq[i];
    for (int i = 0; i < l; ++i) {
        if (keep_block[i]) {
            res.weight += child[i].weight;
            res.vertices.insert(res.vertices.end(), child[i].vertices.begin(),
                                child[i].vertices.end());
        } else {
            res.weight += block_weight[i];
            res.vertices.insert(res.vertices.end(),
                                tree.nodes[node.children[i]].vertices.begin(),
                                tree.nodes[node.children[i]].vertices.end());
        }
    }
    std::sort(res.vertices.begin(), res.vertices.end());

    if (opts.audit) {
        // removing the non-kept blocks leaves the quotient acyclic
        std::vector<int> q_left;
        for (int i = 0; i < l; ++i)
            if (keep_block[i]) q_left.push_back(i);
        audit_check(q_left.empty() || is_acyclic(induced_subgraph(*node.quotient, q_left)),
                    "fvs quotient residue has a cycle");
        // combination identity: node optimum = quotient optimum + children optima
        long long total_wq = std::accumulate(wq.begin(), wq.end(), 0LL);
        long long quotient_opt = total_wq - kept_weight;
        long long children_sum = 0;
        for (int i = 0; i < l; ++i) children_sum += child[i].weight;
        audit_check(res.weight == quotient_opt + children_sum,
                    "fvs combination identity failed");
        // the node's own graph minus the set is acyclic
        std::vector<char> removed(w.size(), 0);
        for (int v : res.vertices) removed[v] = 1;
        std::vector<int> left;
        for (size_t li = 0; li < node.vertices.size(); ++li)
            if (!removed[node.vertices[li]]) left.push_back(static_cast<int>(li));
        audit_check(left.empty() || is_acyclic(induced_subgraph(node.graph, left)),
                    "fvs residue has a cycle");
    }
    return res;
}

}  // namespace detail

inline FvsResult solve_feedback_vertex_set(const Digraph& d, const std::vector<long long>& weights,
                                           const SolveOptions& opts = {}) {
    if (static_cast<int>(weights.size()) != d.num_vertices())
        throw std::invalid_argument("feedback_vertex_set: weight vector length mismatch");
    for (long long x : weights)
        if (x < 0) throw std::invalid_argument("feedback_vertex_set: negative weight");
    auto tree = decomposition_tree(d);
    auto r = detail::fvs_rec(tree, tree.root, weights, opts);
    FvsResult out{r.weight, std::move(r.vertices)};
    long long check = 0;
    for (int v : out.vertices) check += weights[v];
    if (check != out.weight)
        throw std::logic_error("feedback_vertex_set: weight bookkeeping failed");
    return out;
}

inline FvsResult solve_feedback_vertex_set(const DecompositionTree& tree,
                                           const std::vector<long long>& weights,
                                           const SolveOptions& opts = {}) {
    auto r = detail::fvs_rec(tree, tree.root, weights, opts);
    return {r.weight, std::move(r.vertices)};
}

}  // namespace modsolve
