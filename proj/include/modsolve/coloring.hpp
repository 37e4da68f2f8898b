#pragma once

// Exact list sizes ("demands") variant of digraph coloring: assign each vertex
// demand-many colors from [1..k] so that every color class induces an acyclic
// subgraph; minimize k. Solved along the modular decomposition: a block's demand in
// the quotient is the block's own optimum, the quotient is covered by acyclic vertex
// subsets via the bounded ILP, and quotient color ranges are threaded back through
// the blocks' own solutions.
//
// Color lists are kept as sorted disjoint inclusive ranges, so huge demands stay
// cheap to represent.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "modsolve/digraph.hpp"
#include "modsolve/ilp.hpp"
#include "modsolve/modular.hpp"
#include "modsolve/solver_common.hpp"

namespace modsolve {

inline constexpr int coloring_default_max_quotient = 12;

using ColorList = std::vector<std::pair<long long, long long>>;  // inclusive ranges

struct ColoringResult {
    long long colors = 0;
    std::vector<ColorList> lists;  // per vertex
};

inline long long color_list_size(const ColorList& l) {
    long long s = 0;
    for (auto [a, b] : l) s += b - a + 1;
    return s;
}

inline bool color_list_contains(const ColorList& l, long long c) {
    for (auto [a, b] : l)
        if (a <= c && c <= b) return true;
    return false;
}

namespace detail {

inline ColorList normalize_color_list(ColorList l) {
    std::sort(l.begin(), l.end());
    ColorList out;
    for (auto [a, b] : l) {
        if (!out.empty() && out.back().second + 1 >= a)
            out.back().second = std::max(out.back().second, b);
        else
            out.push_back({a, b});
    }
    return out;
}

// Elements of `outer` (flattened ascending) at 0-based positions [pos, pos+count).
inline ColorList select_positions(const ColorList& outer, long long pos, long long count) {
    ColorList out;
    long long acc = 0;
    for (auto [a, b] : outer) {
        long long len = b - a + 1;
        long long lo = std::max(pos, acc), hi = std::min(pos + count, acc + len);
        if (lo < hi) out.push_back({a + (lo - acc), a + (hi - 1 - acc)});
        acc += len;
    }
    if (acc < pos + count) throw std::logic_error("select_positions: outer list too short");
    return out;
}

struct QuotientColoring {
    long long k = 0;
    std::vector<ColorList> lists;
};

// Cover the quotient's demands by acyclic vertex subsets (one subset per bundle of
// identical color classes), then hand out consecutive color ranges in subset
// enumeration order.
inline QuotientColoring color_quotient(const Digraph& q, const std::vector<long long>& dem) {
    const int l = q.num_vertices();
    const std::uint32_t full = l == 32 ? ~0u : (1u << l) - 1;
    std::vector<std::uint32_t> sets;
    for (std::uint32_t s = 1; s <= full; ++s) {
        auto vs = std::vector<int>();
        for (int v = 0; v < l; ++v)
            if (s >> v & 1) vs.push_back(v);
        if (is_acyclic(induced_subgraph(q, vs))) sets.push_back(s);
    }
    IlpProblem p;
    for (auto s : sets) {
        long long cap = std::numeric_limits<long long>::max();
        for (int v = 0; v < l; ++v)
            if (s >> v & 1) cap = std::min(cap, dem[v]);
        p.bounds.push_back({0, cap});
        p.objective.push_back(1);
    }
    for (int v = 0; v < l; ++v) {
        IlpRow row;
        for (size_t i = 0; i < sets.size(); ++i)
            if (sets[i] >> v & 1) row.terms.push_back({static_cast<int>(i), 1});
        row.sense = RowSense::eq;
        row.rhs = dem[v];
        p.rows.push_back(std::move(row));
    }
    auto sol = solve_ilp(p);
    if (!sol) throw std::logic_error("quotient coloring ILP infeasible");
    QuotientColoring qc;
    qc.lists.assign(l, {});
    long long next = 1;
    for (size_t i = 0; i < sets.size(); ++i) {
        long long x = sol->assignment[i];
        if (x == 0) continue;
        for (int v = 0; v < l; ++v)
            if (sets[i] >> v & 1) qc.lists[v].push_back({next, next + x - 1});
        next += x;
    }
    qc.k = next - 1;
    for (auto& lst : qc.lists) lst = normalize_color_list(lst);
    if (qc.k != sol->value) throw std::logic_error("quotient coloring bookkeeping failed");
    return qc;
}

struct ColoringNodeResult {
    long long k = 0;
    std::vector<ColorList> lists;  // per node-local vertex
};

inline ColoringNodeResult coloring_rec(const DecompositionTree& tree, int node_id,
                                       const std::vector<long long>& dem,
                                       const SolveOptions& opts);

}  // namespace detail

// Witness check: every list has exactly demand-many colors inside [1..colors] and
// every color class induces an acyclic subgraph. Checking the classes at each range
// start suffices: any class is contained in the class at the latest start at or
// before it.
inline bool is_valid_list_coloring(const Digraph& d, const std::vector<long long>& dem,
                                   long long colors, const std::vector<ColorList>& lists) {
    const int n = d.num_vertices();
    if (static_cast<int>(lists.size()) != n || static_cast<int>(dem.size()) != n) return false;
    std::vector<long long> starts;
    for (int v = 0; v < n; ++v) {
        const auto& l = lists[v];
        for (size_t i = 0; i < l.size(); ++i) {
            auto [a, b] = l[i];
            if (a > b || a < 1 || b > colors) return false;
            if (i > 0 && l[i - 1].second >= a) return false;
            starts.push_back(a);
        }
        if (color_list_size(l) != dem[v]) return false;
    }
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    for (long long c : starts) {
        std::vector<int> cls;
        for (int v = 0; v < n; ++v)
            if (color_list_contains(lists[v], c)) cls.push_back(v);
        if (!cls.empty() && !is_acyclic(induced_subgraph(d, cls))) return false;
    }
    return true;
}

namespace detail {

inline ColoringNodeResult coloring_rec(const DecompositionTree& tree, int node_id,
                                       const std::vector<long long>& dem,
                                       const SolveOptions& opts) {
    const auto& node = tree.nodes[node_id];
    if (node.kind == ModuleKind::leaf) {
        long long n_v = dem[node.vertices[0]];
        return {n_v, {ColorList{{1, n_v}}}};
    }
    const int l = static_cast<int>(node.children.size());
    check_quotient("coloring", l, coloring_default_max_quotient, opts);

    std::vector<ColoringNodeResult> child(l);
    std::vector<long long> qdem(l);
    for (int i = 0; i < l; ++i) {
        child[i] = coloring_rec(tree, node.children[i], dem, opts);
        qdem[i] = child[i].k;
    }
    auto qc = color_quotient(*node.quotient, qdem);

    ColoringNodeResult res;
    res.k = qc.k;
    res.lists.assign(node.vertices.size(), {});
    for (int i = 0; i < l; ++i) {
        const auto& palette = qc.lists[i];
        if (opts.audit)
            audit_check(color_list_size(palette) == child[i].k,
                        "coloring quotient palette size mismatch");
        const auto& child_vertices = tree.nodes[node.children[i]].vertices;
        for (size_t cv = 0; cv < child_vertices.size(); ++cv) {
            ColorList mapped;
            for (auto [a, b] : child[i].lists[cv]) {
                auto sel = select_positions(palette, a - 1, b - a + 1);
                mapped.insert(mapped.end(), sel.begin(), sel.end());
            }
            auto it = std::lower_bound(node.vertices.begin(), node.vertices.end(),
                                       child_vertices[cv]);
            res.lists[it - node.vertices.begin()] = normalize_color_list(std::move(mapped));
        }
    }
    if (opts.audit) {
        std::vector<long long> node_dem(node.vertices.size());
        for (size_t i = 0; i < node.vertices.size(); ++i) node_dem[i] = dem[node.vertices[i]];
        audit_check(is_valid_list_coloring(node.graph, node_dem, res.k, res.lists),
                    "coloring expansion is invalid");
    }
    return res;
}

}  // namespace detail

inline ColoringResult solve_coloring(const DecompositionTree& tree,
                                     const std::vector<long long>& demands,
                                     const SolveOptions& opts = {}) {
    auto r = detail::coloring_rec(tree, tree.root, demands, opts);
    return {r.k, std::move(r.lists)};
}

inline ColoringResult solve_coloring(const Digraph& d, const std::vector<long long>& demands,
                                     const SolveOptions& opts = {}) {
    if (static_cast<int>(demands.size()) != d.num_vertices())
        throw std::invalid_argument("coloring: demand vector length mismatch");
    for (long long x : demands)
        if (x < 1) throw std::invalid_argument("coloring: demands must be at least 1");
    auto tree = decomposition_tree(d);
    return solve_coloring(tree, demands, opts);
}

}  // namespace modsolve
