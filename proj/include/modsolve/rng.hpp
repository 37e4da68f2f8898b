#pragma once

#include <cstdint>
#include <stdexcept>

namespace modsolve {

// Deterministic 64-bit stream (splitmix64 update). All randomized behavior in this
// library draws from this generator in a fixed order, so a seed pins the output
// bit-for-bit on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) by rejection sampling.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
        std::uint64_t residue = (0 - bound) % bound;
        std::uint64_t r;
        do {
            r = next();
        } while (r < residue);
        return r % bound;
    }

    // Uniform integer in [lo, hi], inclusive.
    long long next_int(long long lo, long long hi) {
        if (lo > hi) throw std::invalid_argument("next_int: empty range");
        return lo + static_cast<long long>(
                        next_below(static_cast<std::uint64_t>(hi - lo) + 1ULL));
    }

    // Bernoulli draw: true with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) {
        if (den == 0) throw std::invalid_argument("chance: zero denominator");
        if (num >= den) return true;
        return next_below(den) < num;
    }

private:
    std::uint64_t state_;
};

}  // namespace modsolve
