#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "modsolve/digraph.hpp"
#include "modsolve/ilp.hpp"
#include "modsolve/modular.hpp"
#include "modsolve/solver_common.hpp"

namespace modsolve {

inline constexpr int paths_default_max_quotient = 9;
inline constexpr int paths_max_pairs = 8;

// Routes one walk per terminal pair (source, target), all simultaneously, where
// each vertex z may appear at most capacity[z] times across the collection. A
// pair with source == target asks for a directed cycle through that vertex and
// occupies it twice (the walk sequence repeats it at both ends). The result
// minimizes the summed sequence lengths.
struct DisjointPathsResult {
    bool feasible = false;
    long long total_length = 0;
    std::vector<std::vector<int>> walks;  // one per pair, empty when infeasible
};

inline bool is_valid_path_collection(const Digraph& d,
                                     const std::vector<std::pair<int, int>>& pairs,
                                     const std::vector<long long>& capacity,
                                     const std::vector<std::vector<int>>& walks) {
    const int n = d.num_vertices();
    if (capacity.size() != static_cast<std::size_t>(n)) return false;
    if (walks.size() != pairs.size()) return false;
    std::vector<long long> used(n, 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& walk = walks[i];
        const auto [s, t] = pairs[i];
        if (walk.empty() || walk.front() != s || walk.back() != t) return false;
        for (int v : walk)
            if (v < 0 || v >= n) return false;
        for (std::size_t j = 0; j + 1 < walk.size(); ++j)
            if (!d.has_edge(walk[j], walk[j + 1])) return false;
        const std::size_t distinct_len = s == t ? walk.size() - 1 : walk.size();
        if (s == t && walk.size() < 3) return false;
        std::vector<int> seen(walk.begin(), walk.begin() + distinct_len);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
        for (int v : walk) ++used[v];
    }
    for (int v = 0; v < n; ++v)
        if (used[v] > capacity[v]) return false;
    return true;
}

namespace detail {

struct PathsEntry {
    bool feasible = false;
    long long total = 0;
    std::map<int, std::vector<int>> walks;  // pair index -> walk, original vertex ids
};

struct PathsTable {
    std::vector<int> pair_ids;        // pairs with both terminals inside the module, ascending
    std::vector<PathsEntry> entries;  // indexed by subset mask over pair_ids
};

// Table recursion: entry (module, A) is the cheapest collection routing exactly
// the pairs of A inside the module, after reserving one capacity unit at every
// terminal of a pair outside A (those walks are built by some ancestor and will
// land on their terminals). Same-block pairs either defer to the child table or
// are promoted and routed through the quotient alongside the cross pairs; the
// per-pair quotient walks are unit flows of an integer program whose block
// capacity rows meter aggregate residual room, and walks are then lifted by
// picking, inside each crossed block, the smallest vertex with spare capacity
// beyond what later terminals still claim.
class PathsSolver {
public:
    PathsSolver(const DecompositionTree& tree, const std::vector<std::pair<int, int>>& pairs,
                const std::vector<long long>& capacity, const SolveOptions& opts)
        : tree_(tree), pairs_(pairs), capacity_(capacity), opts_(opts) {}

    PathsTable solve(int id) {
        const auto& node = tree_.nodes[id];
        PathsTable table;
        for (std::size_t i = 0; i < pairs_.size(); ++i)
            if (contains(node, pairs_[i].first) && contains(node, pairs_[i].second))
                table.pair_ids.push_back(static_cast<int>(i));
        const int np = static_cast<int>(table.pair_ids.size());
        table.entries.resize(std::size_t{1} << np);
        if (node.children.empty()) {
            // A single vertex holds no walk, not even a self cycle, so only the
            // empty subset can be feasible and only with its reservations paid.
            table.entries[0].feasible = residual(node, table.pair_ids, 0)[0] >= 0;
            return table;
        }
        const int l = static_cast<int>(node.children.size());
        check_quotient("disjoint_paths", l, paths_default_max_quotient, opts_);
        std::vector<PathsTable> sub;
        sub.reserve(node.children.size());
        for (int child : node.children) sub.push_back(solve(child));

        std::vector<int> ls(np), lt(np), hs(np), ht(np);
        std::uint32_t same_mask = 0;
        for (int j = 0; j < np; ++j) {
            ls[j] = node_local_id(node, pairs_[table.pair_ids[j]].first);
            lt[j] = node_local_id(node, pairs_[table.pair_ids[j]].second);
            hs[j] = node.block_of[ls[j]];
            ht[j] = node.block_of[lt[j]];
            if (hs[j] == ht[j]) same_mask |= 1u << j;
        }
        std::vector<std::vector<int>> block_local(l);
        for (std::size_t loc = 0; loc < node.vertices.size(); ++loc)
            block_local[node.block_of[loc]].push_back(static_cast<int>(loc));
        const auto qedges = node.quotient->edges();
        const int ne = static_cast<int>(qedges.size());
        std::vector<std::vector<int>> in_edges(l), out_edges(l);
        for (int e = 0; e < ne; ++e) {
            out_edges[qedges[e].first].push_back(e);
            in_edges[qedges[e].second].push_back(e);
        }

        for (std::uint32_t a = 0; a < table.entries.size(); ++a) {
            const auto wa = residual(node, table.pair_ids, a);
            if (*std::min_element(wa.begin(), wa.end()) < 0) continue;
            const std::uint32_t same_in_a = a & same_mask;

            bool have_best = false;
            long long best_total = 0;
            std::vector<std::uint32_t> best_child(l, 0);
            std::vector<long long> best_assign;
            std::vector<int> best_routed;

            for (std::uint32_t b = 0; b <= same_in_a; ++b) {
                if (b & ~same_in_a) continue;
                std::vector<std::uint32_t> child_mask(l, 0);
                bool ok = true;
                for (int j = 0; j < np && ok; ++j) {
                    if (!(same_in_a >> j & 1) || (b >> j & 1)) continue;
                    const int k = hs[j];
                    const auto& ids = sub[k].pair_ids;
                    const auto it = std::find(ids.begin(), ids.end(), table.pair_ids[j]);
                    child_mask[k] |= 1u << (it - ids.begin());
                }
                long long child_total = 0;
                std::vector<long long> caps(l, 0);
                for (int k = 0; k < l && ok; ++k) {
                    const auto& entry = sub[k].entries[child_mask[k]];
                    if (!entry.feasible) {
                        ok = false;
                        break;
                    }
                    child_total += entry.total;
                    for (int loc : block_local[k]) caps[k] += wa[loc];
                    caps[k] -= entry.total;
                    if (caps[k] < 0) ok = false;
                }
                if (!ok) continue;
                std::vector<int> routed;
                for (int j = 0; j < np; ++j)
                    if ((b >> j & 1) || ((a >> j & 1) && !(same_mask >> j & 1)))
                        routed.push_back(j);

                IlpProblem p;
                const int nv = static_cast<int>(routed.size());
                p.bounds.assign(static_cast<std::size_t>(nv) * ne, {0, 1});
                p.objective.assign(static_cast<std::size_t>(nv) * ne, 1);
                for (int idx = 0; idx < nv; ++idx) {
                    const int j = routed[idx];
                    const int base = idx * ne;
                    if (hs[j] != ht[j]) {
                        for (int e : in_edges[hs[j]]) p.bounds[base + e] = {0, 0};
                        for (int e : out_edges[ht[j]]) p.bounds[base + e] = {0, 0};
                    }
                    IlpRow leave{{}, RowSense::eq, 1};
                    for (int e : out_edges[hs[j]]) leave.terms.push_back({base + e, 1});
                    p.rows.push_back(std::move(leave));
                    IlpRow arrive{{}, RowSense::eq, 1};
                    for (int e : in_edges[ht[j]]) arrive.terms.push_back({base + e, 1});
                    p.rows.push_back(std::move(arrive));
                    for (int k = 0; k < l; ++k) {
                        if (k == hs[j] || k == ht[j]) continue;
                        IlpRow balance{{}, RowSense::eq, 0};
                        for (int e : in_edges[k]) balance.terms.push_back({base + e, 1});
                        for (int e : out_edges[k]) balance.terms.push_back({base + e, -1});
                        if (!balance.terms.empty()) p.rows.push_back(std::move(balance));
                        IlpRow once{{}, RowSense::le, 1};
                        for (int e : in_edges[k]) once.terms.push_back({base + e, 1});
                        if (!once.terms.empty()) p.rows.push_back(std::move(once));
                    }
                }
                for (int k = 0; k < l; ++k) {
                    long long terminals_here = 0;
                    for (int j : routed)
                        if (hs[j] == k) ++terminals_here;
                    IlpRow cap{{}, RowSense::le, caps[k] - terminals_here};
                    for (int idx = 0; idx < nv; ++idx)
                        for (int e : in_edges[k]) cap.terms.push_back({idx * ne + e, 1});
                    p.rows.push_back(std::move(cap));
                }
                const auto sol = solve_ilp(p);
                if (!sol) continue;
                const long long total = sol->value + nv + child_total;
                if (!have_best || total < best_total) {
                    have_best = true;
                    best_total = total;
                    best_child = child_mask;
                    best_assign = sol->assignment;
                    best_routed = routed;
                }
            }
            if (!have_best) continue;

            auto& entry = table.entries[a];
            entry.feasible = true;
            entry.total = best_total;
            auto live = wa;
            for (int k = 0; k < l; ++k)
                for (const auto& [gid, walk] : sub[k].entries[best_child[k]].walks) {
                    entry.walks[gid] = walk;
                    for (int v : walk) {
                        const int loc = node_local_id(node, v);
                        if (--live[loc] < 0)
                            throw std::logic_error("child collection exceeded residual capacity");
                    }
                }
            std::vector<long long> claimed(node.vertices.size(), 0);
            for (int j : best_routed) {
                ++claimed[ls[j]];
                ++claimed[lt[j]];
            }
            for (std::size_t idx = 0; idx < best_routed.size(); ++idx) {
                const int j = best_routed[idx];
                --claimed[ls[j]];
                --claimed[lt[j]];
                const auto blocks = flow_walk(qedges, out_edges, best_assign,
                                              static_cast<int>(idx) * ne, hs[j], ht[j], l);
                std::vector<int> walk{node.vertices[ls[j]]};
                for (std::size_t pos = 1; pos + 1 < blocks.size(); ++pos) {
                    int pick = -1;
                    for (int loc : block_local[blocks[pos]])
                        if (live[loc] > claimed[loc]) {
                            pick = loc;
                            break;
                        }
                    if (pick == -1)
                        throw std::logic_error("no spare vertex inside a crossed block");
                    --live[pick];
                    walk.push_back(node.vertices[pick]);
                }
                walk.push_back(node.vertices[lt[j]]);
                if (--live[ls[j]] < 0 || --live[lt[j]] < 0)
                    throw std::logic_error("capacity underflow at a terminal");
                entry.walks[table.pair_ids[j]] = std::move(walk);
            }
            if (opts_.audit) audit_entry(node, table, a, wa, entry);
        }
        return table;
    }

private:
    bool contains(const DecompNode& node, int v) const {
        return std::binary_search(node.vertices.begin(), node.vertices.end(), v);
    }

    // Capacity left after reserving the terminals of every pair not in `a`,
    // indexed by node-local vertex id. Entries below zero mark dead subsets.
    std::vector<long long> residual(const DecompNode& node, const std::vector<int>& pair_ids,
                                    std::uint32_t a) const {
        std::vector<long long> wa;
        wa.reserve(node.vertices.size());
        for (int v : node.vertices) wa.push_back(capacity_[v]);
        std::vector<char> selected(pairs_.size(), 0);
        for (std::size_t j = 0; j < pair_ids.size(); ++j)
            if (a >> j & 1) selected[pair_ids[j]] = 1;
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (selected[i]) continue;
            if (contains(node, pairs_[i].first)) --wa[node_local_id(node, pairs_[i].first)];
            if (contains(node, pairs_[i].second)) --wa[node_local_id(node, pairs_[i].second)];
        }
        return wa;
    }

    // Follows the unit flow of one routed pair through the quotient, from the
    // source block to the target block (back around to it for cycles).
    static std::vector<int> flow_walk(const std::vector<Edge>& qedges,
                                      const std::vector<std::vector<int>>& out_edges,
                                      const std::vector<long long>& assign, int base, int from,
                                      int to, int l) {
        std::vector<int> blocks{from};
        int cur = from;
        int steps = 0;
        do {
            int nxt = -1;
            for (int e : out_edges[cur])
                if (assign[base + e] == 1) {
                    nxt = qedges[e].second;
                    break;
                }
            if (nxt == -1) throw std::logic_error("routed pair flow broke off");
            blocks.push_back(nxt);
            cur = nxt;
            if (++steps > l) throw std::logic_error("routed pair flow does not terminate");
        } while (cur != to);
        return blocks;
    }

    void audit_entry(const DecompNode& node, const PathsTable& table, std::uint32_t a,
                     const std::vector<long long>& wa, const PathsEntry& entry) const {
        std::vector<int> expected;
        for (std::size_t j = 0; j < table.pair_ids.size(); ++j)
            if (a >> j & 1) expected.push_back(table.pair_ids[j]);
        std::vector<int> keys;
        for (const auto& [gid, walk] : entry.walks) keys.push_back(gid);
        audit_check(keys == expected, "collection routes exactly the selected pairs");
        long long sum = 0;
        std::vector<long long> used(node.vertices.size(), 0);
        for (const auto& [gid, walk] : entry.walks) {
            sum += static_cast<long long>(walk.size());
            std::vector<int> local;
            local.reserve(walk.size());
            for (int v : walk) {
                local.push_back(node_local_id(node, v));
                ++used[local.back()];
            }
            if (pairs_[gid].first == pairs_[gid].second) {
                local.pop_back();
                audit_check(is_cycle_sequence(node.graph, local),
                            "self pair walk is a cycle of the block graph");
            } else {
                audit_check(is_path_sequence(node.graph, local),
                            "pair walk is a path of the block graph");
            }
        }
        audit_check(sum == entry.total, "collection length matches the table value");
        for (std::size_t loc = 0; loc < used.size(); ++loc)
            audit_check(used[loc] <= wa[loc], "collection respects residual capacity");
    }

    const DecompositionTree& tree_;
    const std::vector<std::pair<int, int>>& pairs_;
    const std::vector<long long>& capacity_;
    const SolveOptions& opts_;
};

}  // namespace detail

inline DisjointPathsResult solve_disjoint_paths(const DecompositionTree& tree,
                                                const std::vector<std::pair<int, int>>& pairs,
                                                const std::vector<long long>& capacity,
                                                const SolveOptions& opts = {}) {
    const auto& root = tree.nodes[tree.root];
    const int n = root.graph.num_vertices();
    if (capacity.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("disjoint_paths: one capacity per vertex required");
    for (long long c : capacity)
        if (c < 0) throw std::invalid_argument("disjoint_paths: capacities must be non-negative");
    if (static_cast<int>(pairs.size()) > paths_max_pairs)
        throw std::invalid_argument("disjoint_paths: at most " +
                                    std::to_string(paths_max_pairs) + " terminal pairs supported");
    for (const auto& [s, t] : pairs)
        if (s < 0 || s >= n || t < 0 || t >= n)
            throw std::invalid_argument("disjoint_paths: terminal out of range");
    detail::PathsSolver solver(tree, pairs, capacity, opts);
    const auto table = solver.solve(tree.root);
    const auto& entry = table.entries[(std::size_t{1} << pairs.size()) - 1];
    DisjointPathsResult result;
    if (!entry.feasible) return result;
    result.feasible = true;
    result.total_length = entry.total;
    result.walks.resize(pairs.size());
    for (const auto& [gid, walk] : entry.walks) result.walks[gid] = walk;
    return result;
}

inline DisjointPathsResult solve_disjoint_paths(const Digraph& d,
                                                const std::vector<std::pair<int, int>>& pairs,
                                                const std::vector<long long>& capacity,
                                                const SolveOptions& opts = {}) {
    return solve_disjoint_paths(decomposition_tree(d), pairs, capacity, opts);
}

}  // namespace modsolve
