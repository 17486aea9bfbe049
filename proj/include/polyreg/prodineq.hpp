#pragma once
// The thirteen prime-product inequalities r_lo r_{lo+1} ... r_t > RHS(t),
// with r_1 = 5 < r_2 = 7 < ... the primes >= 5 and W(t) = (t+3) 2^{t-3}.

#include "polyreg/numth.hpp"

#include <array>
#include <string>

namespace polyreg {

/// Affine shape kappa W - nu applied to W(t).
struct RhsShape {
    int kappa = 1;
    int nu = 0;
};

struct IneqSpec {
    int index = 0;       // 1..13
    int lower = 0;       // product starts at r_lower
    int t0 = 0;          // threshold from which the clause is asserted
    RhsShape shape;
    bool cubed = false;  // RHS = shape^3
    std::int64_t factor = 1;  // RHS = factor * shape otherwise
    std::string roman;
};

inline const std::array<IneqSpec, 13>& inequality_specs() {
    static const std::array<IneqSpec, 13> specs{{
        {1, 7, 16, {1, 0}, true, 1, "i"},
        {2, 3, 7, {1, 0}, false, 45 * 49, "ii"},
        {3, 3, 5, {1, 0}, false, 2 * 18, "iii"},
        {4, 7, 18, {3, 1}, true, 1, "iv"},
        {5, 3, 9, {3, 1}, false, 142 * 304, "v"},
        {6, 3, 8, {3, 1}, false, 49 * 142, "vi"},
        {7, 3, 7, {3, 1}, false, 9 * 88, "vii"},
        {8, 7, 18, {4, 1}, true, 1, "viii"},
        {9, 3, 9, {4, 1}, false, 190 * 294, "ix"},
        {10, 3, 8, {4, 1}, false, 66 * 110, "x"},
        {11, 3, 7, {4, 1}, false, 3 * 90, "xi"},
        {12, 7, 20, {12, 7}, true, 1, "xii"},
        {13, 3, 10, {12, 7}, false, 580 * 1492, "xiii"},
    }};
    return specs;
}

inline const IneqSpec& inequality_spec(int index) {
    if (index < 1 || index > 13) throw precondition_error("inequality index must be in 1..13");
    return inequality_specs()[static_cast<std::size_t>(index - 1)];
}

/// W(t) = (t+3) 2^{t-3}, t >= 3.
inline BigInt W(int t) {
    if (t < 3) throw precondition_error("W: t must be >= 3");
    return BigInt(t + 3) * pow2(t - 3);
}

inline BigInt shape_value(RhsShape s, int t) { return BigInt(s.kappa * W(t) - s.nu); }

inline BigInt rhs_value(const IneqSpec& spec, int t) {
    const BigInt base = shape_value(spec.shape, t);
    if (spec.cubed) return BigInt(base * base * base);
    return BigInt(spec.factor * base);
}

struct IneqCheck {
    BigInt lhs;
    BigInt rhs;
    bool holds = false;
};

inline IneqCheck verify_inequality(int index, int t) {
    const auto& spec = inequality_spec(index);
    if (t < spec.lower) throw precondition_error("verify_inequality: empty product");
    IneqCheck r;
    r.lhs = prime_range_product(static_cast<std::size_t>(spec.lower), static_cast<std::size_t>(t));
    r.rhs = rhs_value(spec, t);
    r.holds = r.lhs > r.rhs;
    return r;
}

/// RHS(u+1)/RHS(u) < r_{u+1} for t0 <= u <= t_max (exact rationals).
inline bool verify_induction_step(int index, int t_max) {
    const auto& spec = inequality_spec(index);
    if (t_max < spec.t0) throw precondition_error("verify_induction_step: t_max below threshold");
    for (int u = spec.t0; u < t_max; ++u) {
        const Rational ratio(rhs_value(spec, u + 1), rhs_value(spec, u));
        if (!(ratio < Rational(nth_prime_ge5(static_cast<std::size_t>(u + 1))))) return false;
    }
    return true;
}

/// Antecedent/consequent clause pairs: (vii)=>(ii), (vii)=>(xi), (x)=>(vi),
/// (ix)=>(v), (viii)=>(iv).
inline const std::array<std::pair<int, int>, 5>& inequality_implications() {
    static const std::array<std::pair<int, int>, 5> imp{{{7, 2}, {7, 11}, {10, 6}, {9, 5}, {8, 4}}};
    return imp;
}

}  // namespace polyreg
