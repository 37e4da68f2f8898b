#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "modsolve/digraph.hpp"
#include "modsolve/rng.hpp"

namespace modsolve {

// Erdos-Renyi style digraph: every ordered pair (u,v), u != v, is kept with
// probability p. p is quantized to a 30-bit threshold so the instance depends only
// on the seed and the literal value of p.
inline Digraph gen_uniform(int n, double p, std::uint64_t seed) {
    if (n <= 0) throw std::invalid_argument("gen_uniform: n must be positive");
    const std::uint64_t den = 1ULL << 30;
    std::uint64_t num =
        p <= 0.0 ? 0 : (p >= 1.0 ? den : static_cast<std::uint64_t>(std::llround(p * double(den))));
    Rng rng(seed);
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && rng.chance(num, den)) es.emplace_back(u, v);
    return Digraph(n, std::move(es));
}

namespace detail {

enum class CographOp { parallel, series, order };

inline void cograph_rec(int n, int offset, Rng& rng, std::vector<Edge>& es) {
    if (n == 1) return;
    int n1 = static_cast<int>(rng.next_int(1, n - 1));
    auto op = static_cast<CographOp>(rng.next_below(3));
    cograph_rec(n1, offset, rng, es);
    cograph_rec(n - n1, offset + n1, rng, es);
    for (int a = offset; a < offset + n1; ++a)
        for (int b = offset + n1; b < offset + n; ++b) {
            if (op == CographOp::series || op == CographOp::order) es.emplace_back(a, b);
            if (op == CographOp::series) es.emplace_back(b, a);
        }
}

inline void bounded_rec(int n, int omega, int offset, Rng& rng, std::vector<Edge>& es) {
    if (n == 1) return;
    int l = static_cast<int>(rng.next_int(2, std::min(omega, n)));
    // split n into l positive parts: first l-1 entries of a shuffled 1..n-1 as cuts
    std::vector<int> cuts(n - 1);
    for (int i = 0; i < n - 1; ++i) cuts[i] = i + 1;
    for (int i = n - 2; i > 0; --i)
        std::swap(cuts[i], cuts[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
    cuts.resize(l - 1);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(n);
    std::vector<int> starts = {0};
    for (int i = 0; i + 1 < l; ++i) starts.push_back(cuts[i]);
    // random quotient on the l blocks, each ordered block pair joined completely or not
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b) {
            if (a == b || !rng.chance(1, 2)) continue;
            for (int u = starts[a]; u < (a + 1 < l ? starts[a + 1] : n); ++u)
                for (int v = starts[b]; v < (b + 1 < l ? starts[b + 1] : n); ++v)
                    es.emplace_back(offset + u, offset + v);
        }
    for (int i = 0; i < l; ++i) {
        int s = starts[i];
        int e = i + 1 < l ? starts[i + 1] : n;
        bounded_rec(e - s, omega, offset + s, rng, es);
    }
}

}  // namespace detail

// Random directed co-graph built from a random binary combination tree whose inner
// nodes are disjoint union, series (all digons across), or order (all edges one way).
inline Digraph gen_cograph(int n, std::uint64_t seed) {
    if (n <= 0) throw std::invalid_argument("gen_cograph: n must be positive");
    Rng rng(seed);
    std::vector<Edge> es;
    detail::cograph_rec(n, 0, rng, es);
    return Digraph(n, std::move(es));
}

// Random digraph assembled from a recursive module structure with at most `omega`
// blocks per level, so its directed modular width is at most max(2, omega).
inline Digraph gen_bounded(int n, int omega, std::uint64_t seed) {
    if (n <= 0) throw std::invalid_argument("gen_bounded: n must be positive");
    if (omega < 2) throw std::invalid_argument("gen_bounded: omega must be at least 2");
    Rng rng(seed);
    std::vector<Edge> es;
    detail::bounded_rec(n, omega, 0, rng, es);
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    return Digraph(n, std::move(es));
}

inline std::vector<long long> gen_weights(int n, long long lo, long long hi, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<long long> w(n);
    for (auto& x : w) x = rng.next_int(lo, hi);
    return w;
}

}  // namespace modsolve
