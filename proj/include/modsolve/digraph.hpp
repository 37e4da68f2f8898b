#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace modsolve {

using Edge = std::pair<int, int>;

// Immutable simple digraph on vertices 0..n-1. No loops, no parallel edges.
class Digraph {
public:
    Digraph(int n, std::vector<Edge> edges) : n_(n) {
        if (n <= 0) throw std::invalid_argument("digraph needs at least one vertex");
        std::sort(edges.begin(), edges.end());
        out_.assign(n, {});
        in_.assign(n, {});
        const Edge* prev = nullptr;
        for (const Edge& e : edges) {
            auto [u, v] = e;
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u) +
                                            " " + std::to_string(v));
            if (u == v) throw std::invalid_argument("loop edge not allowed: " + std::to_string(u));
            if (prev && *prev == e)
                throw std::invalid_argument("duplicate edge: " + std::to_string(u) + " " +
                                            std::to_string(v));
            out_[u].push_back(v);
            in_[v].push_back(u);
            prev = &e;
        }
        for (auto& a : in_) std::sort(a.begin(), a.end());
        m_ = static_cast<int>(edges.size());
    }

    int num_vertices() const { return n_; }
    int num_edges() const { return m_; }
    const std::vector<int>& out_neighbors(int v) const { return out_.at(v); }
    const std::vector<int>& in_neighbors(int v) const { return in_.at(v); }

    bool has_edge(int u, int v) const {
        const auto& a = out_.at(u);
        return std::binary_search(a.begin(), a.end(), v);
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> es;
        es.reserve(m_);
        for (int u = 0; u < n_; ++u)
            for (int v : out_[u]) es.emplace_back(u, v);
        return es;
    }

    bool operator==(const Digraph& o) const { return n_ == o.n_ && out_ == o.out_; }

private:
    int n_;
    int m_ = 0;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
};

// Subgraph induced by `verts` (must be distinct, in range, non-empty); vertex i of the
// result corresponds to the i-th smallest element of `verts`.
inline Digraph induced_subgraph(const Digraph& d, std::vector<int> verts) {
    std::sort(verts.begin(), verts.end());
    if (verts.empty()) throw std::invalid_argument("induced subgraph needs at least one vertex");
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
        throw std::invalid_argument("induced subgraph vertex list has duplicates");
    if (verts.front() < 0 || verts.back() >= d.num_vertices())
        throw std::invalid_argument("induced subgraph vertex out of range");
    std::vector<int> pos(d.num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) pos[verts[i]] = i;
    std::vector<Edge> es;
    for (int u : verts)
        for (int v : d.out_neighbors(u))
            if (pos[v] >= 0) es.emplace_back(pos[u], pos[v]);
    return Digraph(static_cast<int>(verts.size()), std::move(es));
}

// Strongly connected components in reverse topological order (every edge leaving a
// component points at an earlier entry of the result). Components list their members
// in ascending order.
inline std::vector<std::vector<int>> strongly_connected_components(const Digraph& d) {
    const int n = d.num_vertices();
    std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0), comp_of(n, -1);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int next_index = 0;

    // Iterative Tarjan; frames hold (vertex, position in its out-list).
    std::vector<std::pair<int, size_t>> frames;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        frames.emplace_back(root, 0);
        while (!frames.empty()) {
            auto& [v, ei] = frames.back();
            if (ei == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            const auto& outs = d.out_neighbors(v);
            bool descended = false;
            while (ei < outs.size()) {
                int w = outs[ei++];
                if (index[w] == -1) {
                    frames.emplace_back(w, 0);
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp_of[w] = static_cast<int>(comps.size());
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
            int finished = v;
            frames.pop_back();
            if (!frames.empty()) {
                int parent = frames.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }
    return comps;
}

inline bool is_acyclic(const Digraph& d) {
    for (const auto& c : strongly_connected_components(d))
        if (c.size() > 1) return false;
    return true;
}

// ---- edge-list text format ----------------------------------------------------------
//
//   # comment
//   <n>
//   <u> <v>          one edge per line
//
// '#' starts a comment anywhere on a line; blank lines are skipped. The first data
// line carries the vertex count, every later one exactly two endpoints.

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view s) {
    std::vector<std::string_view> toks;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) toks.push_back(s.substr(i, j - i));
        i = j;
    }
    return toks;
}

inline bool parse_int(std::string_view t, int& out) {
    const char* b = t.data();
    const char* e = b + t.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
    throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

inline Digraph parse_digraph(std::string_view text) {
    int n = -1;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    int line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
        ++line_no;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (size_t h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        auto toks = detail::split_tokens(line);
        if (toks.empty()) continue;
        if (n < 0) {
            if (toks.size() != 1 || !detail::parse_int(toks[0], n))
                detail::parse_fail(line_no, "expected a single integer vertex count");
            if (n <= 0) detail::parse_fail(line_no, "vertex count must be positive");
            continue;
        }
        int u, v;
        if (toks.size() != 2 || !detail::parse_int(toks[0], u) || !detail::parse_int(toks[1], v))
            detail::parse_fail(line_no, "expected two integer endpoints");
        if (u < 0 || u >= n)
            detail::parse_fail(line_no, "vertex " + std::to_string(u) + " out of range [0, " +
                                            std::to_string(n) + ")");
        if (v < 0 || v >= n)
            detail::parse_fail(line_no, "vertex " + std::to_string(v) + " out of range [0, " +
                                            std::to_string(n) + ")");
        if (u == v) detail::parse_fail(line_no, "loop edge " + std::to_string(u));
        if (!seen.insert({u, v}).second)
            detail::parse_fail(line_no,
                               "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        edges.emplace_back(u, v);
    }
    if (n < 0) throw std::invalid_argument("empty input: missing vertex count line");
    return Digraph(n, std::move(edges));
}

inline std::string serialize_digraph(const Digraph& d) {
    std::string s = std::to_string(d.num_vertices());
    s += '\n';
    for (auto [u, v] : d.edges()) {
        s += std::to_string(u);
        s += ' ';
        s += std::to_string(v);
        s += '\n';
    }
    return s;
}

// True when `seq` visits distinct vertices and each consecutive pair is an edge.
inline bool is_path_sequence(const Digraph& d, const std::vector<int>& seq) {
    if (seq.empty()) return false;
    std::set<int> used;
    for (int v : seq) {
        if (v < 0 || v >= d.num_vertices()) return false;
        if (!used.insert(v).second) return false;
    }
    for (size_t i = 0; i + 1 < seq.size(); ++i)
        if (!d.has_edge(seq[i], seq[i + 1])) return false;
    return true;
}

// True when `seq` is a closed walk through distinct vertices (the closing edge
// back to seq.front() included); needs at least two vertices.
inline bool is_cycle_sequence(const Digraph& d, const std::vector<int>& seq) {
    if (seq.size() < 2) return false;
    if (!is_path_sequence(d, seq)) return false;
    return d.has_edge(seq.back(), seq.front());
}

}  // namespace modsolve
