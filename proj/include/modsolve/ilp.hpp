#pragma once

// Small exact integer linear program solver: minimize c.x subject to linear
// inequalities over finite integer boxes. Depth-first branch and bound with
// interval propagation; fully deterministic (fixed branching order, strict
// improvement only), so equal inputs always produce equal optima and assignments.
// All arithmetic is checked; overflowing 64-bit intermediate values raise
// ilp_overflow_error instead of wrapping.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace modsolve {

struct ilp_overflow_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RowSense { le, ge, eq };

struct IlpRow {
    std::vector<std::pair<int, long long>> terms;  // (variable, coefficient), nonzero coeffs
    RowSense sense = RowSense::le;
    long long rhs = 0;
};

struct IlpProblem {
    std::vector<std::pair<long long, long long>> bounds;  // inclusive [lo, hi] per variable
    std::vector<long long> objective;                     // same length as bounds
    std::vector<IlpRow> rows;
};

struct IlpSolution {
    long long value = 0;
    std::vector<long long> assignment;
};

namespace ilp_detail {

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw ilp_overflow_error("ilp: addition overflow");
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw ilp_overflow_error("ilp: multiplication overflow");
    return r;
}

struct Interval {
    long long lo, hi;
};

// Bounds on a*x over the interval of x.
inline Interval term_range(long long a, Interval x) {
    long long p = checked_mul(a, x.lo), q = checked_mul(a, x.hi);
    return {std::min(p, q), std::max(p, q)};
}

class Solver {
public:
    Solver(const IlpProblem& p, std::optional<long long> value_limit, bool first_only = false)
        : prob_(p), first_only_(first_only) {
        const size_t nv = p.bounds.size();
        if (p.objective.size() != nv)
            throw std::invalid_argument("ilp: objective length mismatch");
        for (auto [lo, hi] : p.bounds)
            if (lo > hi) throw std::invalid_argument("ilp: empty variable domain");
        for (const auto& row : p.rows)
            for (auto [v, a] : row.terms) {
                if (v < 0 || v >= static_cast<int>(nv))
                    throw std::invalid_argument("ilp: row references unknown variable");
                if (a == 0) throw std::invalid_argument("ilp: zero coefficient in row");
            }
        rows_ = p.rows;
        // the objective participates in propagation once an incumbent exists
        IlpRow obj_row;
        for (size_t v = 0; v < nv; ++v)
            if (p.objective[v] != 0) obj_row.terms.push_back({static_cast<int>(v), p.objective[v]});
        obj_row.sense = RowSense::le;
        obj_row.rhs = 0;
        has_obj_row_ = !obj_row.terms.empty();
        rows_.push_back(obj_row);  // rhs patched per incumbent; disabled until then
        obj_cap_ = value_limit;
    }

    std::optional<IlpSolution> solve() {
        std::vector<Interval> box;
        box.reserve(prob_.bounds.size());
        for (auto [lo, hi] : prob_.bounds) box.push_back({lo, hi});
        search(box);
        if (!best_) return std::nullopt;
        return best_;
    }

private:
    // Tighten the box against every row until a fixpoint; false means infeasible.
    bool propagate(std::vector<Interval>& box) {
        bool changed = true;
        int rounds = 0;
        while (changed) {
            changed = false;
            if (++rounds > 512) break;  // fixpoint is guaranteed, this is a safety valve
            for (size_t ri = 0; ri < rows_.size(); ++ri) {
                const auto& row = rows_[ri];
                bool is_obj = has_obj_row_ && ri + 1 == rows_.size();
                long long cap;
                if (is_obj) {
                    std::optional<long long> limit;
                    if (best_) limit = best_->value - 1;
                    if (obj_cap_) limit = limit ? std::min(*limit, *obj_cap_) : *obj_cap_;
                    if (!limit) continue;
                    cap = *limit;
                } else {
                    cap = row.rhs;
                }
                // row as sum of term intervals
                long long lo_sum = 0, hi_sum = 0;
                for (auto [v, a] : row.terms) {
                    auto r = term_range(a, box[v]);
                    lo_sum = checked_add(lo_sum, r.lo);
                    hi_sum = checked_add(hi_sum, r.hi);
                }
                RowSense sense = is_obj ? RowSense::le : row.sense;
                if ((sense == RowSense::le || sense == RowSense::eq) && lo_sum > cap) return false;
                if ((sense == RowSense::ge || sense == RowSense::eq) && hi_sum < cap) return false;
                for (auto [v, a] : row.terms) {
                    auto r = term_range(a, box[v]);
                    // slack available to this term alone
                    if (sense == RowSense::le || sense == RowSense::eq) {
                        long long others_lo = checked_add(lo_sum, -r.lo);
                        long long term_cap = checked_add(cap, -others_lo);  // a*x <= term_cap
                        if (!shrink(box[v], a, term_cap, true)) return false;
                    }
                    if (sense == RowSense::ge || sense == RowSense::eq) {
                        long long others_hi = checked_add(hi_sum, -r.hi);
                        long long term_floor = checked_add(cap, -others_hi);  // a*x >= term_floor
                        if (!shrink(box[v], a, term_floor, false)) return false;
                    }
                    auto r2 = term_range(a, box[v]);
                    if (r2.lo != r.lo || r2.hi != r.hi) {
                        lo_sum = checked_add(checked_add(lo_sum, -r.lo), r2.lo);
                        hi_sum = checked_add(checked_add(hi_sum, -r.hi), r2.hi);
                        changed = true;
                    }
                }
            }
        }
        return true;
    }

    // Intersect box[v] with {x : a*x <= cap} (upper=true) or {x : a*x >= cap}.
    static bool shrink(Interval& iv, long long a, long long cap, bool upper) {
        // a*x <= cap  <=>  x <= floor(cap/a) for a>0, x >= ceil(cap/a) for a<0
        auto floor_div = [](long long num, long long den) {
            long long q = num / den;
            if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
            return q;
        };
        auto ceil_div = [&](long long num, long long den) { return -floor_div(-num, den); };
        if (upper) {
            if (a > 0)
                iv.hi = std::min(iv.hi, floor_div(cap, a));
            else
                iv.lo = std::max(iv.lo, ceil_div(cap, a));
        } else {
            if (a > 0)
                iv.lo = std::max(iv.lo, ceil_div(cap, a));
            else
                iv.hi = std::min(iv.hi, floor_div(cap, a));
        }
        return iv.lo <= iv.hi;
    }

    // Returns true when the search should stop early (first_only_ and a solution found).
    bool search(std::vector<Interval> box) {
        if (!propagate(box)) return false;
        int branch_var = -1;
        for (size_t v = 0; v < box.size(); ++v)
            if (box[v].lo < box[v].hi) {
                branch_var = static_cast<int>(v);
                break;
            }
        if (branch_var == -1) {
            long long value = 0;
            for (size_t v = 0; v < box.size(); ++v)
                value = checked_add(value, checked_mul(prob_.objective[v], box[v].lo));
            if (obj_cap_ && value > *obj_cap_) return false;
            if (!best_ || value < best_->value) {
                IlpSolution s;
                s.value = value;
                s.assignment.reserve(box.size());
                for (auto iv : box) s.assignment.push_back(iv.lo);
                best_ = std::move(s);
            }
            return first_only_;
        }
        const auto iv = box[branch_var];
        if (iv.hi - iv.lo < 32) {
            for (long long x = iv.lo; x <= iv.hi; ++x) {
                auto child = box;
                child[branch_var] = {x, x};
                if (search(std::move(child))) return true;
            }
        } else {
            long long mid = iv.lo + (iv.hi - iv.lo) / 2;
            auto low = box;
            low[branch_var] = {iv.lo, mid};
            if (search(std::move(low))) return true;
            auto high = box;
            high[branch_var] = {mid + 1, iv.hi};
            if (search(std::move(high))) return true;
        }
        return false;
    }

    const IlpProblem& prob_;
    std::vector<IlpRow> rows_;
    bool has_obj_row_ = false;
    std::optional<long long> obj_cap_;
    std::optional<IlpSolution> best_;
    bool first_only_ = false;
};

}  // namespace ilp_detail

// Minimize objective.x over the box subject to the rows; nullopt when infeasible.
// `value_limit` optionally discards solutions with objective above the limit.
inline std::optional<IlpSolution> solve_ilp(const IlpProblem& problem,
                                            std::optional<long long> value_limit = std::nullopt) {
    ilp_detail::Solver s(problem, value_limit);
    return s.solve();
}

// Feasibility variant: returns the first assignment satisfying the rows, ignoring the
// objective, without exploring the rest of the search tree.
inline std::optional<std::vector<long long>> ilp_feasible(IlpProblem problem) {
    problem.objective.assign(problem.bounds.size(), 0);
    ilp_detail::Solver s(problem, std::nullopt, true);
    auto sol = s.solve();
    if (!sol) return std::nullopt;
    return sol->assignment;
}

}  // namespace modsolve
