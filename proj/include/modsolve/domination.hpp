#pragma once

// Minimum-weight dominating set (closed out-neighborhoods), exact, parameterized by
// the modular decomposition. At each node every dominating subset Z of the quotient
// is scored: blocks of Z that receive a quotient edge from Z contribute one cheapest
// vertex, the remaining blocks of Z must dominate themselves and contribute their own
// optimum.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "modsolve/digraph.hpp"
#include "modsolve/modular.hpp"
#include "modsolve/solver_common.hpp"

namespace modsolve {

inline constexpr int domset_default_max_quotient = 20;

struct DomsetResult {
    long long weight = 0;
    std::vector<int> vertices;  // ascending
};

inline bool is_dominating_set(const Digraph& d, const std::vector<int>& verts) {
    std::vector<char> covered(d.num_vertices(), 0);
    for (int v : verts) {
        if (v < 0 || v >= d.num_vertices()) return false;
        covered[v] = 1;
        for (int w : d.out_neighbors(v)) covered[w] = 1;
    }
    return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

namespace detail {

struct DomNodeResult {
    long long weight = 0;
    std::vector<int> vertices;  // original ids
};

inline DomNodeResult domset_rec(const DecompositionTree& tree, int node_id,
                                const std::vector<long long>& w, const SolveOptions& opts) {
    const auto& node = tree.nodes[node_id];
    if (node.kind == ModuleKind::leaf) return {w[node.vertices[0]], {node.vertices[0]}};
    const int l = static_cast<int>(node.children.size());
    check_quotient("dominating_set", l, domset_default_max_quotient, opts);

    std::vector<DomNodeResult> child(l);
    std::vector<long long> cheap_w(l);
    std::vector<int> cheap_v(l);
    for (int i = 0; i < l; ++i) {
        child[i] = domset_rec(tree, node.children[i], w, opts);
        const auto& verts = tree.nodes[node.children[i]].vertices;
        cheap_v[i] = verts[0];
        cheap_w[i] = w[verts[0]];
        for (int orig : verts)
            if (w[orig] < cheap_w[i]) {
                cheap_w[i] = w[orig];
                cheap_v[i] = orig;
            }
    }
    const Digraph& q = *node.quotient;
    std::vector<std::uint32_t> out_mask(l, 0);
    for (int i = 0; i < l; ++i)
        for (int j : q.out_neighbors(i)) out_mask[i] |= 1u << j;
    const std::uint32_t full = l == 32 ? ~0u : (1u << l) - 1;

    long long best = std::numeric_limits<long long>::max();
    std::uint32_t best_z = 0, best_hit = 0;
    for (std::uint32_t z = 1; z <= full; ++z) {
        std::uint32_t reach = 0;
        for (std::uint32_t rest = z; rest;) {
            int i = std::countr_zero(rest);
            rest &= rest - 1;
            reach |= out_mask[i];
        }
        if ((z | reach) != full) continue;
        std::uint32_t hit = z & reach;  // blocks dominated from within Z: one vertex each
        long long weight = 0;
        for (std::uint32_t rest = z; rest;) {
            int i = std::countr_zero(rest);
            rest &= rest - 1;
            weight += (hit >> i & 1) ? cheap_w[i] : child[i].weight;
        }
        if (weight < best) {
            best = weight;
            best_z = z;
            best_hit = hit;
        }
    }

    DomNodeResult res;
    res.weight = best;
    for (std::uint32_t rest = best_z; rest;) {
        int i = std::countr_zero(rest);
        rest &= rest - 1;
        if (best_hit >> i & 1)
            res.vertices.push_back(cheap_v[i]);
        else
            res.vertices.insert(res.vertices.end(), child[i].vertices.begin(),
                                child[i].vertices.end());
    }
    std::sort(res.vertices.begin(), res.vertices.end());

    if (opts.audit) {
        // Z dominates the quotient and the assembled set dominates the node's graph
        std::vector<int> zs;
        for (int i = 0; i < l; ++i)
            if (best_z >> i & 1) zs.push_back(i);
        audit_check(is_dominating_set(q, zs), "domset quotient subset does not dominate");
        long long recomputed = 0;
        for (int i : zs)
            recomputed += (best_hit >> i & 1) ? cheap_w[i] : child[i].weight;
        audit_check(recomputed == res.weight, "domset combination identity failed");
        std::vector<int> local;
        for (int v : res.vertices) {
            auto it = std::lower_bound(node.vertices.begin(), node.vertices.end(), v);
            local.push_back(static_cast<int>(it - node.vertices.begin()));
        }
        audit_check(is_dominating_set(node.graph, local), "domset result does not dominate");
        long long sum = 0;
        for (int v : res.vertices) sum += w[v];
        audit_check(sum == res.weight, "domset weight bookkeeping failed");
    }
    return res;
}

}  // namespace detail

inline DomsetResult solve_dominating_set(const Digraph& d, const std::vector<long long>& weights,
                                         const SolveOptions& opts = {}) {
    if (static_cast<int>(weights.size()) != d.num_vertices())
        throw std::invalid_argument("dominating_set: weight vector length mismatch");
    for (long long x : weights)
        if (x < 0) throw std::invalid_argument("dominating_set: negative weight");
    auto tree = decomposition_tree(d);
    auto r = detail::domset_rec(tree, tree.root, weights, opts);
    return {r.weight, std::move(r.vertices)};
}

inline DomsetResult solve_dominating_set(const DecompositionTree& tree,
                                         const std::vector<long long>& weights,
                                         const SolveOptions& opts = {}) {
    auto r = detail::domset_rec(tree, tree.root, weights, opts);
    return {r.weight, std::move(r.vertices)};
}

}  // namespace modsolve
