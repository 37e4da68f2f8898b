#pragma once

// Brute-force reference implementations used to cross-check the decomposition-based
// solvers. Everything here works directly from problem definitions on the Digraph
// API and deliberately shares no machinery with the solvers it checks.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modsolve/digraph.hpp"

namespace modsolve {

struct OracleBudget {
    int max_n = 8;
    int max_r = 2;
    long long max_total_weight = 12;
};

struct oracle_budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace oracle_detail {

inline void require_n(const Digraph& d, const OracleBudget& b) {
    if (d.num_vertices() > b.max_n)
        throw oracle_budget_error("oracle refuses n=" + std::to_string(d.num_vertices()) +
                                  " (budget max_n=" + std::to_string(b.max_n) + ")");
}

inline std::vector<int> mask_vertices(std::uint32_t mask) {
    std::vector<int> vs;
    for (int v = 0; mask; ++v, mask >>= 1)
        if (mask & 1) vs.push_back(v);
    return vs;
}

// Module test for `block` inside the subgraph induced by `whole` (both given as
// bitmasks over the original vertex ids).
inline bool is_module_within(const Digraph& d, std::uint32_t whole, std::uint32_t block) {
    auto members = mask_vertices(block);
    auto outside = mask_vertices(whole & ~block);
    for (int z : outside) {
        int out_hits = 0, in_hits = 0;
        for (int w : members) {
            out_hits += d.has_edge(z, w);
            in_hits += d.has_edge(w, z);
        }
        if (out_hits != 0 && out_hits != static_cast<int>(members.size())) return false;
        if (in_hits != 0 && in_hits != static_cast<int>(members.size())) return false;
    }
    return true;
}

// Enumerate set partitions of the vertices in `mask`, calling `fn(blocks)`; blocks
// are bitmasks. Stops early when fn returns false.
template <class Fn>
bool for_each_set_partition(std::vector<int>& elems, size_t i, std::vector<std::uint32_t>& blocks,
                            Fn&& fn) {
    if (i == elems.size()) return fn(blocks);
    int v = elems[i];
    const size_t existing = blocks.size();
    for (size_t bi = 0; bi < existing; ++bi) {
        blocks[bi] |= 1u << v;
        if (!for_each_set_partition(elems, i + 1, blocks, fn)) return false;
        blocks[bi] &= ~(1u << v);
    }
    blocks.push_back(1u << v);
    bool cont = for_each_set_partition(elems, i + 1, blocks, fn);
    blocks.pop_back();
    return cont;
}

inline int brute_dmw_rec(const Digraph& d, std::uint32_t mask, std::map<std::uint32_t, int>& memo) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    auto elems = mask_vertices(mask);
    const int k = static_cast<int>(elems.size());
    if (k == 1) return memo[mask] = 1;
    int best = k;  // partition into singletons is always available
    std::vector<std::uint32_t> blocks;
    for_each_set_partition(elems, 0, blocks, [&](const std::vector<std::uint32_t>& bs) {
        if (bs.size() < 2 || static_cast<int>(bs.size()) >= best) return true;
        for (auto b : bs)
            if (!is_module_within(d, mask, b)) return true;
        int val = static_cast<int>(bs.size());
        for (auto b : bs) val = std::max(val, brute_dmw_rec(d, b, memo));
        best = std::min(best, val);
        return true;
    });
    return memo[mask] = best;
}

}  // namespace oracle_detail

// Directed modular width straight from the definition: least k such that the digraph
// has at most k vertices or splits into 2..k modules of width at most k.
inline int brute_modular_width(const Digraph& d, const OracleBudget& budget = {}) {
    oracle_detail::require_n(d, budget);
    std::map<std::uint32_t, int> memo;
    std::uint32_t all = d.num_vertices() == 32 ? ~0u : (1u << d.num_vertices()) - 1;
    return oracle_detail::brute_dmw_rec(d, all, memo);
}

namespace oracle_detail {

// acyclicity of the induced sub-digraph given by `mask`, by DFS with colors
inline bool mask_acyclic(const Digraph& d, std::uint32_t mask) {
    const int n = d.num_vertices();
    std::vector<int> color(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::pair<int, size_t>> stack;
    for (int s = 0; s < n; ++s) {
        if (!(mask >> s & 1) || color[s]) continue;
        stack.emplace_back(s, 0);
        color[s] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            const auto& outs = d.out_neighbors(v);
            bool moved = false;
            while (i < outs.size()) {
                int w = outs[i++];
                if (!(mask >> w & 1)) continue;
                if (color[w] == 1) return false;
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.emplace_back(w, 0);
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

}  // namespace oracle_detail

struct BruteSetResult {
    long long weight = 0;
    std::vector<int> vertices;
};

// Minimum-weight vertex set whose removal leaves no directed cycle; subsets scanned
// in ascending bitmask order, first optimum kept.
inline BruteSetResult brute_feedback_vertex_set(const Digraph& d,
                                                const std::vector<long long>& w,
                                                const OracleBudget& budget = {}) {
    oracle_detail::require_n(d, budget);
    const int n = d.num_vertices();
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::optional<BruteSetResult> best;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        long long weight = 0;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) weight += w[v];
        if (best && weight >= best->weight) continue;
        if (!oracle_detail::mask_acyclic(d, full & ~mask)) continue;
        best = BruteSetResult{weight, oracle_detail::mask_vertices(mask)};
    }
    return *best;  // mask = full is always acyclic, so a result exists
}

// Minimum-weight set whose closed out-neighborhood covers all vertices; ascending
// bitmask scan, first optimum kept.
inline BruteSetResult brute_dominating_set(const Digraph& d, const std::vector<long long>& w,
                                           const OracleBudget& budget = {}) {
    oracle_detail::require_n(d, budget);
    const int n = d.num_vertices();
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::vector<std::uint32_t> cover(n);
    for (int v = 0; v < n; ++v) {
        cover[v] = 1u << v;
        for (int u : d.out_neighbors(v)) cover[v] |= 1u << u;
    }
    std::optional<BruteSetResult> best;
    for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
        long long weight = 0;
        std::uint32_t covered = 0;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) {
                weight += w[v];
                covered |= cover[v];
            }
        if (covered != full) continue;
        if (!best || weight < best->weight)
            best = BruteSetResult{weight, oracle_detail::mask_vertices(mask)};
    }
    return *best;  // the full vertex set always dominates
}

// Minimum k for the exact-list-size coloring: cover the demand vector by acyclic
// subsets, one subset per bundle of identical color classes, fewest colors total.
// Demand vectors are memoized; refuses when the demands sum past the budget.
inline long long brute_coloring(const Digraph& d, const std::vector<long long>& dem,
                                const OracleBudget& budget = {}) {
    oracle_detail::require_n(d, budget);
    const int n = d.num_vertices();
    long long total = 0;
    for (long long x : dem) {
        if (x < 1) throw std::invalid_argument("brute_coloring: demands must be at least 1");
        total += x;
    }
    if (total > budget.max_total_weight)
        throw oracle_budget_error("oracle refuses demand total " + std::to_string(total) +
                                  " (budget max_total_weight=" +
                                  std::to_string(budget.max_total_weight) + ")");
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::vector<std::uint32_t> acyclic_sets;
    for (std::uint32_t s = 1; s <= full; ++s)
        if (oracle_detail::mask_acyclic(d, s)) acyclic_sets.push_back(s);
    auto encode = [&](const std::vector<long long>& v) {
        std::uint64_t key = 0;
        for (int i = 0; i < n; ++i) key |= static_cast<std::uint64_t>(v[i]) << (4 * i);
        return key;
    };
    std::map<std::uint64_t, long long> memo;
    std::vector<long long> cur(dem);
    auto rec = [&](auto&& self, std::uint64_t key) -> long long {
        if (key == 0) return 0;
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::uint32_t supp = 0;
        for (int i = 0; i < n; ++i)
            if (key >> (4 * i) & 0xf) supp |= 1u << i;
        long long best = std::numeric_limits<long long>::max();
        for (std::uint32_t s : acyclic_sets) {
            if ((s & supp) != s) continue;
            std::uint64_t dec = 0;
            for (int i = 0; i < n; ++i)
                if (s >> i & 1) dec |= 1ULL << (4 * i);
            best = std::min(best, 1 + self(self, key - dec));
        }
        return memo[key] = best;
    };
    return rec(rec, encode(cur));
}

namespace oracle_detail {

// ends[T] = bitmask of vertices v such that d restricted to T has a Hamiltonian
// path ending at v. Seeds may restrict which singletons start a path.
inline std::vector<std::uint32_t> path_end_table(const Digraph& d, std::uint32_t seeds) {
    const int n = d.num_vertices();
    std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
    for (int v = 0; v < n; ++v)
        if (seeds >> v & 1) ends[1u << v] = 1u << v;
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t t = 1; t <= full; ++t) {
        if (!ends[t]) continue;
        for (int v = 0; v < n; ++v) {
            if (!(ends[t] >> v & 1)) continue;
            for (int w : d.out_neighbors(v))
                if (!(t >> w & 1)) ends[t | (1u << w)] |= 1u << w;
        }
    }
    return ends;
}

}  // namespace oracle_detail

// Minimum number of vertex-disjoint directed paths covering every vertex.
inline long long brute_path_number(const Digraph& d, const OracleBudget& budget = {}) {
    oracle_detail::require_n(d, budget);
    const int n = d.num_vertices();
    const std::uint32_t full = (1u << n) - 1;
    auto ends = oracle_detail::path_end_table(d, full);
    std::vector<int> cover(std::size_t{1} << n, n + 1);
    cover[0] = 0;
    for (std::uint32_t t = 1; t <= full; ++t)
        for (std::uint32_t s = t; s; s = (s - 1) & t)
            if (ends[s] && cover[t ^ s] + 1 < cover[t]) cover[t] = cover[t ^ s] + 1;
    return cover[full];
}

// Whether a directed cycle visits every vertex exactly once. A single vertex
// has no loop available, so the answer there is no.
inline bool brute_has_hamiltonian_cycle(const Digraph& d, const OracleBudget& budget = {}) {
    oracle_detail::require_n(d, budget);
    const int n = d.num_vertices();
    if (n == 1) return false;
    auto ends = oracle_detail::path_end_table(d, 1u);
    const std::uint32_t full = (1u << n) - 1;
    for (int v = 1; v < n; ++v)
        if ((ends[full] >> v & 1) && d.has_edge(v, 0)) return true;
    return false;
}

namespace oracle_detail {

inline void walk_search(const Digraph& d, int s, int t, std::vector<int>& seq,
                        std::vector<char>& used, std::vector<std::vector<int>>& out) {
    const int cur = seq.back();
    for (int nxt : d.out_neighbors(cur)) {
        if (s == t && nxt == s) {
            if (seq.size() >= 2) {
                auto cycle = seq;
                cycle.push_back(s);
                out.push_back(std::move(cycle));
            }
            continue;
        }
        if (used[nxt]) continue;
        seq.push_back(nxt);
        used[nxt] = 1;
        if (s != t && nxt == t)
            out.push_back(seq);
        else
            walk_search(d, s, t, seq, used, out);
        seq.pop_back();
        used[nxt] = 0;
    }
}

// Every simple s->t path when s != t, every cycle through s (recorded with the
// closing repeat of s) when s == t.
inline std::vector<std::vector<int>> candidate_walks(const Digraph& d, int s, int t) {
    std::vector<int> seq{s};
    std::vector<char> used(d.num_vertices(), 0);
    used[s] = 1;
    std::vector<std::vector<int>> out;
    walk_search(d, s, t, seq, used, out);
    return out;
}

}  // namespace oracle_detail

struct BrutePathsResult {
    bool feasible = false;
    long long total = 0;
};

// Cheapest simultaneous routing of one walk per terminal pair where vertex z
// may appear at most capacity[z] times across the collection; equal terminals
// ask for a cycle and occupy their vertex twice. Value sums sequence lengths.
inline BrutePathsResult brute_disjoint_paths(const Digraph& d,
                                             const std::vector<std::pair<int, int>>& pairs,
                                             const std::vector<long long>& capacity,
                                             const OracleBudget& budget = {}) {
    oracle_detail::require_n(d, budget);
    if (static_cast<int>(pairs.size()) > budget.max_r)
        throw oracle_budget_error("oracle refuses " + std::to_string(pairs.size()) +
                                  " terminal pairs (budget max_r=" + std::to_string(budget.max_r) +
                                  ")");
    const int n = d.num_vertices();
    if (capacity.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("brute_disjoint_paths: one capacity per vertex required");
    for (long long c : capacity)
        if (c < 0)
            throw std::invalid_argument("brute_disjoint_paths: capacities must be non-negative");
    std::vector<std::vector<std::vector<int>>> cands;
    for (const auto& [s, t] : pairs) {
        if (s < 0 || s >= n || t < 0 || t >= n)
            throw std::invalid_argument("brute_disjoint_paths: terminal out of range");
        cands.push_back(oracle_detail::candidate_walks(d, s, t));
    }
    std::vector<long long> used(n, 0);
    std::optional<long long> best;
    auto rec = [&](auto&& self, std::size_t i, long long len) -> void {
        if (i == pairs.size()) {
            if (!best || len < *best) best = len;
            return;
        }
        for (const auto& w : cands[i]) {
            bool fits = true;
            for (int v : w)
                if (++used[v] > capacity[v]) fits = false;
            if (fits) self(self, i + 1, len + static_cast<long long>(w.size()));
            for (int v : w) --used[v];
        }
    };
    rec(rec, 0, 0);
    BrutePathsResult result;
    if (best) {
        result.feasible = true;
        result.total = *best;
    }
    return result;
}

// One directed walk per host pair (a cycle when the terminals coincide), with
// interior vertices pairwise distinct and never on a `blocked` vertex. Blocked
// vertices may still serve as walk terminals.
inline bool brute_has_rooted_subdivision(const Digraph& d,
                                         const std::vector<std::pair<int, int>>& host_pairs,
                                         const std::vector<int>& blocked,
                                         const OracleBudget& budget = {}) {
    oracle_detail::require_n(d, budget);
    const int n = d.num_vertices();
    std::vector<char> off_limits(n, 0);
    for (int v : blocked) {
        if (v < 0 || v >= n)
            throw std::invalid_argument("brute_has_rooted_subdivision: vertex out of range");
        off_limits[v] = 1;
    }
    std::vector<std::vector<std::vector<int>>> cands;
    for (const auto& [s, t] : host_pairs) {
        if (s < 0 || s >= n || t < 0 || t >= n)
            throw std::invalid_argument("brute_has_rooted_subdivision: terminal out of range");
        cands.push_back(oracle_detail::candidate_walks(d, s, t));
    }
    std::vector<char> used(n, 0);
    auto rec = [&](auto&& self, std::size_t k) -> bool {
        if (k == cands.size()) return true;
        for (const auto& w : cands[k]) {
            bool fits = true;
            for (std::size_t i = 1; i + 1 < w.size() && fits; ++i)
                if (off_limits[w[i]] || used[w[i]]) fits = false;
            if (!fits) continue;
            for (std::size_t i = 1; i + 1 < w.size(); ++i) used[w[i]] = 1;
            if (self(self, k + 1)) return true;
            for (std::size_t i = 1; i + 1 < w.size(); ++i) used[w[i]] = 0;
        }
        return false;
    };
    return rec(rec, 0);
}

// Whether any injective placement of the pattern vertices admits the rooted
// routing above, one walk per pattern arc instance.
inline bool brute_has_subdivision(const Digraph& d, int pattern_n,
                                  const std::vector<std::pair<int, int>>& pattern_edges,
                                  const OracleBudget& budget = {}) {
    oracle_detail::require_n(d, budget);
    if (pattern_n < 1)
        throw std::invalid_argument("brute_has_subdivision: pattern needs a vertex");
    for (const auto& [u, v] : pattern_edges)
        if (u < 0 || u >= pattern_n || v < 0 || v >= pattern_n)
            throw std::invalid_argument("brute_has_subdivision: pattern arc out of range");
    const int n = d.num_vertices();
    if (pattern_n > n) return false;
    std::vector<int> anchors;
    std::vector<char> taken(n, 0);
    auto place = [&](auto&& self) -> bool {
        if (static_cast<int>(anchors.size()) == pattern_n) {
            std::vector<std::pair<int, int>> host_pairs;
            for (const auto& [u, v] : pattern_edges) host_pairs.push_back({anchors[u], anchors[v]});
            return brute_has_rooted_subdivision(d, host_pairs, anchors, budget);
        }
        for (int v = 0; v < n; ++v) {
            if (taken[v]) continue;
            taken[v] = 1;
            anchors.push_back(v);
            if (self(self)) return true;
            anchors.pop_back();
            taken[v] = 0;
        }
        return false;
    };
    return place(place);
}

// Exact directed path-width by dynamic programming over sweep states: vertices
// enter the current bag once and leave once, a vertex may only enter while none
// of its out-neighbours has already left, and the answer is the smallest
// achievable peak bag size minus one. Every decomposition normalizes to such a
// sweep without growing its widest bag.
inline long long brute_dpw(const Digraph& d, const OracleBudget& budget = {}) {
    oracle_detail::require_n(d, budget);
    const int n = d.num_vertices();
    std::vector<std::uint32_t> out_mask(n, 0);
    for (int v = 0; v < n; ++v)
        for (int w : d.out_neighbors(v)) out_mask[v] |= 1u << w;
    const std::uint32_t full = (1u << n) - 1;
    const int inf = n + 1;
    std::vector<std::vector<int>> peak(full + 1, std::vector<int>(full + 1, inf));
    peak[0][0] = 0;
    for (std::uint32_t entered = 0; entered <= full; ++entered) {
        for (std::uint32_t left = 0; left <= entered; ++left) {
            if (left & ~entered) continue;
            const int cur = peak[entered][left];
            if (cur == inf) continue;
            const int bag = std::popcount(entered) - std::popcount(left);
            for (int v = 0; v < n; ++v) {
                const std::uint32_t bit = 1u << v;
                if (!(entered & bit) && !(out_mask[v] & left)) {
                    int& enter = peak[entered | bit][left];
                    enter = std::min(enter, std::max(cur, bag + 1));
                } else if ((entered & bit) && !(left & bit)) {
                    int& leave = peak[entered][left | bit];
                    leave = std::min(leave, cur);
                }
            }
        }
    }
    return peak[full][full] - 1;
}

// Exact cycle rank straight from the definition: acyclic digraphs have rank 0,
// otherwise take the maximum over strongly connected components, and a strongly
// connected digraph with two or more vertices pays one deletion plus the best
// remaining rank.
inline long long brute_cycle_rank(const Digraph& d, const OracleBudget& budget = {}) {
    oracle_detail::require_n(d, budget);
    const int n = d.num_vertices();
    std::vector<std::uint32_t> out_mask(n, 0);
    for (int v = 0; v < n; ++v)
        for (int w : d.out_neighbors(v)) out_mask[v] |= 1u << w;
    std::vector<int> memo(std::size_t{1} << n, -1);
    auto rank = [&](auto&& self, std::uint32_t mask) -> int {
        if (std::popcount(mask) <= 1) return 0;
        int& slot = memo[mask];
        if (slot >= 0) return slot;
        std::vector<std::uint32_t> reach(n, 0);
        for (int v = 0; v < n; ++v) {
            if (!(mask >> v & 1)) continue;
            std::uint32_t r = 1u << v;
            for (;;) {
                std::uint32_t grown = r;
                for (int u = 0; u < n; ++u)
                    if (r >> u & 1) grown |= out_mask[u] & mask;
                if (grown == r) break;
                r = grown;
            }
            reach[v] = r;
        }
        std::uint32_t assigned = 0;
        int split_max = 0;
        for (int v = 0; v < n && assigned != mask; ++v) {
            if (!(mask >> v & 1) || (assigned >> v & 1)) continue;
            std::uint32_t comp = 0;
            for (int u = 0; u < n; ++u)
                if ((mask >> u & 1) && (reach[v] >> u & 1) && (reach[u] >> v & 1)) comp |= 1u << u;
            if (comp == mask) {
                int best = n;
                for (int w = 0; w < n; ++w)
                    if (mask >> w & 1) best = std::min(best, self(self, mask ^ (1u << w)));
                return slot = 1 + best;
            }
            assigned |= comp;
            split_max = std::max(split_max, self(self, comp));
        }
        return slot = split_max;
    };
    return rank(rank, (1u << n) - 1);
}

}  // namespace modsolve

#include "modsolve/ilp.hpp"

namespace modsolve {

// Exhaustive grid scan over the variable box; first-found optimum in row-major
// ascending order of assignments.
inline std::optional<IlpSolution> brute_ilp(const IlpProblem& p) {
    const size_t nv = p.bounds.size();
    for (auto [lo, hi] : p.bounds)
        if (lo > hi) throw std::invalid_argument("brute_ilp: empty variable domain");
    std::vector<long long> x;
    x.reserve(nv);
    for (auto [lo, hi] : p.bounds) {
        (void)hi;
        x.push_back(lo);
    }
    std::optional<IlpSolution> best;
    while (true) {
        bool ok = true;
        for (const auto& row : p.rows) {
            long long sum = 0;
            for (auto [v, a] : row.terms) sum += a * x[v];
            if (row.sense == RowSense::le && sum > row.rhs) ok = false;
            if (row.sense == RowSense::ge && sum < row.rhs) ok = false;
            if (row.sense == RowSense::eq && sum != row.rhs) ok = false;
            if (!ok) break;
        }
        if (ok) {
            long long value = 0;
            for (size_t v = 0; v < nv; ++v) value += p.objective[v] * x[v];
            if (!best || value < best->value) best = IlpSolution{value, x};
        }
        size_t i = nv;
        while (i > 0) {
            --i;
            if (x[i] < p.bounds[i].second) {
                ++x[i];
                for (size_t j = i + 1; j < nv; ++j) x[j] = p.bounds[j].first;
                break;
            }
            if (i == 0) return best;
        }
        if (nv == 0) return best;
    }
}

}  // namespace modsolve
