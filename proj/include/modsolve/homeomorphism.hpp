#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modsolve/digraph.hpp"
#include "modsolve/modular.hpp"
#include "modsolve/paths.hpp"
#include "modsolve/solver_common.hpp"

namespace modsolve {

// Pattern multigraph: unlike the host digraphs, loops and repeated arcs are
// allowed, and every arc instance asks for its own connecting path.
struct PatternDigraph {
    int n = 0;
    std::vector<Edge> edges;
};

// Same text format as host digraphs, minus the loop and duplicate bans.
inline PatternDigraph parse_pattern(std::string_view text) {
    PatternDigraph h;
    h.n = -1;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line =
            text.substr(start, nl == std::string_view::npos ? nl : nl - start);
        ++line_no;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (std::size_t c = line.find('#'); c != std::string_view::npos) line = line.substr(0, c);
        auto toks = detail::split_tokens(line);
        if (toks.empty()) continue;
        if (h.n < 0) {
            if (toks.size() != 1 || !detail::parse_int(toks[0], h.n))
                detail::parse_fail(line_no, "expected a single integer vertex count");
            if (h.n <= 0) detail::parse_fail(line_no, "vertex count must be positive");
            continue;
        }
        int u, v;
        if (toks.size() != 2 || !detail::parse_int(toks[0], u) || !detail::parse_int(toks[1], v))
            detail::parse_fail(line_no, "expected two integer endpoints");
        if (u < 0 || u >= h.n)
            detail::parse_fail(line_no, "vertex " + std::to_string(u) + " out of range [0, " +
                                            std::to_string(h.n) + ")");
        if (v < 0 || v >= h.n)
            detail::parse_fail(line_no, "vertex " + std::to_string(v) + " out of range [0, " +
                                            std::to_string(h.n) + ")");
        h.edges.emplace_back(u, v);
    }
    if (h.n < 0) throw std::invalid_argument("empty input: missing vertex count line");
    return h;
}

// A subdivision places the pattern vertices on distinct host vertices and
// realizes every pattern arc as a directed path between its placed endpoints
// (a cycle for loops), all internally disjoint and internally avoiding every
// placed vertex.
struct SubdivisionResult {
    bool found = false;
    std::vector<int> anchors;                  // pattern vertex -> host vertex
    std::vector<std::vector<int>> edge_paths;  // one walk per pattern arc instance
};

namespace detail {

inline void validate_pattern(const PatternDigraph& h) {
    if (h.n < 1) throw std::invalid_argument("subdivision: pattern needs a vertex");
    for (const auto& [u, v] : h.edges)
        if (u < 0 || u >= h.n || v < 0 || v >= h.n)
            throw std::invalid_argument("subdivision: pattern arc out of range");
    if (static_cast<int>(h.edges.size()) > paths_max_pairs)
        throw std::invalid_argument("subdivision: at most " + std::to_string(paths_max_pairs) +
                                    " pattern arcs supported");
}

// Placed vertices carry exactly their pattern degree (loops count twice), so
// arc walks cover anchor capacity with their endpoints alone and interior
// visits can only land on spare non-anchor vertices.
inline std::vector<long long> subdivision_capacity(const PatternDigraph& h,
                                                   const std::vector<int>& anchors, int n) {
    std::vector<long long> cap(n, 1);
    for (int a : anchors) cap[a] = 0;
    for (const auto& [u, v] : h.edges) {
        ++cap[anchors[u]];
        ++cap[anchors[v]];
    }
    return cap;
}

inline std::vector<std::pair<int, int>> anchor_pairs(const PatternDigraph& h,
                                                     const std::vector<int>& anchors) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(h.edges.size());
    for (const auto& [u, v] : h.edges) pairs.push_back({anchors[u], anchors[v]});
    return pairs;
}

}  // namespace detail

inline bool is_valid_subdivision(const Digraph& d, const PatternDigraph& h,
                                 const std::vector<int>& anchors,
                                 const std::vector<std::vector<int>>& edge_paths) {
    if (h.n < 1 || anchors.size() != static_cast<std::size_t>(h.n)) return false;
    for (int a : anchors)
        if (a < 0 || a >= d.num_vertices()) return false;
    auto sorted = anchors;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    return is_valid_path_collection(d, detail::anchor_pairs(h, anchors),
                                    detail::subdivision_capacity(h, anchors, d.num_vertices()),
                                    edge_paths);
}

inline SubdivisionResult find_rooted_subdivision(const DecompositionTree& tree,
                                                 const PatternDigraph& h,
                                                 const std::vector<int>& anchors,
                                                 const SolveOptions& opts = {}) {
    detail::validate_pattern(h);
    const int n = tree.nodes[tree.root].graph.num_vertices();
    if (anchors.size() != static_cast<std::size_t>(h.n))
        throw std::invalid_argument("subdivision: one anchor per pattern vertex required");
    for (int a : anchors)
        if (a < 0 || a >= n) throw std::invalid_argument("subdivision: anchor out of range");
    auto sorted = anchors;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("subdivision: anchors must be distinct");
    const auto routing =
        solve_disjoint_paths(tree, detail::anchor_pairs(h, anchors),
                             detail::subdivision_capacity(h, anchors, n), opts);
    SubdivisionResult result;
    if (!routing.feasible) return result;
    result.found = true;
    result.anchors = anchors;
    result.edge_paths = routing.walks;
    if (opts.audit)
        detail::audit_check(is_valid_subdivision(tree.nodes[tree.root].graph, h, anchors,
                                                 result.edge_paths),
                            "routed walks form a rooted subdivision");
    return result;
}

inline SubdivisionResult find_rooted_subdivision(const Digraph& d, const PatternDigraph& h,
                                                 const std::vector<int>& anchors,
                                                 const SolveOptions& opts = {}) {
    return find_rooted_subdivision(decomposition_tree(d), h, anchors, opts);
}

// Tries every injective placement in lexicographic order and keeps the first
// that routes; this is the topological minor test.
inline SubdivisionResult find_subdivision(const DecompositionTree& tree, const PatternDigraph& h,
                                          const SolveOptions& opts = {}) {
    detail::validate_pattern(h);
    const int n = tree.nodes[tree.root].graph.num_vertices();
    SubdivisionResult result;
    if (h.n > n) return result;
    std::vector<int> anchors;
    std::vector<char> taken(n, 0);
    auto place = [&](auto&& self) -> bool {
        if (static_cast<int>(anchors.size()) == h.n) {
            auto attempt = find_rooted_subdivision(tree, h, anchors, opts);
            if (attempt.found) result = std::move(attempt);
            return result.found;
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
    place(place);
    return result;
}

inline SubdivisionResult find_subdivision(const Digraph& d, const PatternDigraph& h,
                                          const SolveOptions& opts = {}) {
    return find_subdivision(decomposition_tree(d), h, opts);
}

}  // namespace modsolve
