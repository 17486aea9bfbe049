#pragma once
// Watson transformations of diagonal ternary lattices and of shifted forms.
//
// For a diagonal lattice the sublattice Lambda_q(L) is obtained by scaling
// some coordinates by p (mult_i in {0,1}); lambda_q(L) = Lambda_q(L) p^{-s}
// restores the scale. On a shifted form sum a_i (c x_i + alpha_i)^2 with
// p not dividing c, the substitution y_i = p^{mult_i} w_i with
// w_i = p^{j - mult_i} alpha_i (mod c), p^j = 1 (mod c), gives
//   p^s * values(stepped) subset of values(original).

#include "polyreg/localrep.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace polyreg {

struct WatsonStep {
    std::int64_t p = 0;
    int q = 0;   // p, or 4 when p = 2 and the unimodular rank at 2 is 2
    int s = 0;   // scale exponent removed after taking Lambda_q
    int j = 0;   // multiplicative order of p mod c (0 for bare lattices)
    std::array<int, 3> mult{};  // coordinate i is scaled by p^{mult_i}

    friend bool operator==(const WatsonStep&, const WatsonStep&) = default;
};

struct LambdaResult {
    DiagonalLattice lattice;
    WatsonStep step;
};

namespace detail {

inline void require_rank3(const DiagonalLattice& L, const char* who) {
    if (L.rank() != 3) throw precondition_error(std::string(who) + ": rank must be 3");
}

// Coordinates split by whether the entry is a p-unit.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> unit_split(const DiagonalLattice& L,
                                                                                 std::int64_t p) {
    std::vector<std::size_t> U, R;
    for (std::size_t i = 0; i < L.rank(); ++i) (L.entries[i] % p == 0 ? R : U).push_back(i);
    std::sort(R.begin(), R.end(), [&](std::size_t x, std::size_t y) {
        return ord_p(L.entries[x], p) < ord_p(L.entries[y], p);
    });
    return {U, R};
}

inline LambdaResult apply_mult(const DiagonalLattice& L, std::int64_t p, int q, int s, std::array<int, 3> mult) {
    LambdaResult r;
    r.step = WatsonStep{p, q, s, 0, mult};
    r.lattice = L;
    for (std::size_t i = 0; i < 3; ++i) {
        const int shift = 2 * mult[i] - s;
        auto& v = r.lattice.entries[i];
        if (shift >= 0)
            v *= ipow(p, shift);
        else {
            const std::int64_t d = ipow(p, -shift);
            if (v % d != 0) throw std::logic_error("lambda: rescaling left a fractional entry");
            v /= d;
        }
    }
    r.lattice.scale_exp[p] += s;
    return r;
}

}  // namespace detail

/// lambda_p for odd p. With L = <a1, p^{s2} a2, p^{s3} a3>, (p, a1a2a3) = 1:
///   0 < s2:       Lambda = <p^2 a1, p^{s2} a2, p^{s3} a3>, s = min(2, s2)
///   s2 = 0 < s3:  Lambda = <p^2 a1, p^2 a2, p^{s3} a3>,    s = 2
/// The original coordinate order is kept.
inline LambdaResult lambda_p_step(const DiagonalLattice& L, std::int64_t p) {
    detail::require_rank3(L, "lambda_p");
    if (p == 2 || !is_prime(p)) throw precondition_error("lambda_p: p must be an odd prime");
    if (is_p_stable(L, p)) throw precondition_error("lambda_p: lattice is already p-stable");
    auto [U, R] = detail::unit_split(L, p);
    std::array<int, 3> mult{};
    if (U.empty()) throw precondition_error("lambda_p: lattice is not primitive at p");
    if (U.size() == 1) {
        mult[U[0]] = 1;
        return detail::apply_mult(L, p, static_cast<int>(p), std::min(2, ord_p(L.entries[R[0]], p)), mult);
    }
    mult[U[0]] = mult[U[1]] = 1;
    return detail::apply_mult(L, p, static_cast<int>(p), 2, mult);
}

inline std::pair<DiagonalLattice, int> lambda_p(const DiagonalLattice& L, std::int64_t p) {
    auto r = lambda_p_step(L, p);
    return {r.lattice, r.step.s};
}

/// lambda_4(<a1, a2, 2^{s3} a3>) = <a1, a2, 2^{s3-2} a3>; requires a1, a2 odd,
/// a1 a2 = 1 (mod 4) and s3 >= 2.
inline LambdaResult lambda_4_step(const DiagonalLattice& L) {
    detail::require_rank3(L, "lambda_4");
    auto [U, R] = detail::unit_split(L, 2);
    if (U.size() != 2) throw precondition_error("lambda_4: unimodular rank at 2 must be 2");
    if (mod(L.entries[U[0]] * L.entries[U[1]], 4) != 1) throw precondition_error("lambda_4: a1*a2 != 1 (mod 4)");
    if (ord_p(L.entries[R[0]], 2) < 2) throw precondition_error("lambda_4: s3 must be >= 2");
    std::array<int, 3> mult{};
    mult[U[0]] = mult[U[1]] = 1;
    return detail::apply_mult(L, 2, 4, 2, mult);
}

inline std::pair<DiagonalLattice, int> lambda_4(const DiagonalLattice& L) {
    auto r = lambda_4_step(L);
    return {r.lattice, r.step.s};
}

/// lambda_2 for unimodular rank 1 at 2: same shape as the odd first case.
inline LambdaResult lambda_2_step(const DiagonalLattice& L) {
    detail::require_rank3(L, "lambda_2");
    auto [U, R] = detail::unit_split(L, 2);
    if (U.size() != 1) throw precondition_error("lambda_2: unimodular rank at 2 must be 1");
    std::array<int, 3> mult{};
    mult[U[0]] = 1;
    return detail::apply_mult(L, 2, 2, std::min(2, ord_p(L.entries[R[0]], 2)), mult);
}

/// The Watson step used by stabilization at p, for a p-unstable lattice.
inline LambdaResult lambda_q_step(const DiagonalLattice& L, std::int64_t p) {
    if (p != 2) return lambda_p_step(L, p);
    detail::require_rank3(L, "lambda_q");
    if (is_2_stable(L)) throw precondition_error("lambda_q: lattice is already 2-stable");
    const auto U = detail::unit_split(L, 2).first;
    if (U.empty()) throw precondition_error("lambda_q: lattice is not primitive at 2");
    if (U.size() == 2) return lambda_4_step(L);
    if (U.size() == 1) return lambda_2_step(L);
    throw std::logic_error("lambda_q: unimodular lattice at 2 reported unstable");
}

/// Smallest j >= 1 with p^j = 1 (mod c).
inline int multiplicative_order(std::int64_t p, std::int64_t c) {
    if (std::gcd(p, c) != 1) throw precondition_error("multiplicative_order: p divides c");
    if (c == 1) return 1;
    std::int64_t x = mod(p, c);
    int j = 1;
    while (x != 1) {
        x = mulmod(x, p, c);
        ++j;
    }
    return j;
}

/// Reduce each alpha_i mod c into the window [0, c/2] by a sign flip.
inline ShiftedForm normalize_shifts(const ShiftedForm& g) {
    ShiftedForm out = g;
    for (auto& a : out.shifts) {
        if (std::gcd(a, g.c) != 1) throw precondition_error("normalize_shifts: shift not coprime to conductor");
        std::int64_t r = mod(a, g.c);
        if (2 * r > g.c) r = g.c - r;
        a = r;
    }
    return out;
}

inline DiagonalLattice lattice_of(const ShiftedForm& g) { return DiagonalLattice(g.coeffs); }

/// Coefficients ascending, shifts carried along.
inline ShiftedForm sorted_form(ShiftedForm g) {
    std::vector<std::pair<std::int64_t, std::int64_t>> pr;
    for (std::size_t i = 0; i < g.rank(); ++i) pr.emplace_back(g.coeffs[i], g.shifts[i]);
    std::sort(pr.begin(), pr.end());
    for (std::size_t i = 0; i < g.rank(); ++i) {
        g.coeffs[i] = pr[i].first;
        g.shifts[i] = pr[i].second;
    }
    return g;
}

struct CosetStepResult {
    ShiftedForm form;
    WatsonStep step;
};

inline CosetStepResult coset_watson_step_traced(const ShiftedForm& g, std::int64_t p) {
    if (g.rank() != 3) throw precondition_error("coset_watson_step: rank must be 3");
    if (g.c % p == 0) throw precondition_error("coset_watson_step: p divides the conductor");
    auto r = lambda_q_step(lattice_of(g), p);
    r.step.j = multiplicative_order(p, g.c);
    ShiftedForm out = g;
    out.coeffs = r.lattice.entries;
    for (std::size_t i = 0; i < 3; ++i) out.shifts[i] = mulmod(ipow(p, r.step.j - r.step.mult[i]), g.shifts[i], g.c);
    return {normalize_shifts(out), r.step};
}

/// One step of lambda_q(L) + p^j v; conductor unchanged.
inline ShiftedForm coset_watson_step(const ShiftedForm& g, std::int64_t p) { return coset_watson_step_traced(g, p).form; }

/// Primes outside c at which the lattice of g is unstable, ascending.
inline std::vector<std::int64_t> unstable_primes(const ShiftedForm& g) {
    std::vector<std::int64_t> cand{2};
    for (auto a : g.coeffs)
        for (auto q : prime_divisors(a))
            if (std::find(cand.begin(), cand.end(), q) == cand.end()) cand.push_back(q);
    std::sort(cand.begin(), cand.end());
    const DiagonalLattice L = lattice_of(g);
    std::vector<std::int64_t> out;
    for (auto p : cand)
        if (g.c % p != 0 && !is_stable_at(L, p)) out.push_back(p);
    return out;
}

struct StabilizeTrace {
    ShiftedForm result;
    std::vector<WatsonStep> steps;
};

/// Apply coset Watson steps at ascending primes p not dividing c until the
/// lattice is p-stable at all of them.
inline StabilizeTrace stabilize_traced(const ShiftedForm& g) {
    if (g.rank() != 3) throw precondition_error("stabilize: rank must be 3");
    std::int64_t gg = 0;
    for (auto a : g.coeffs) gg = std::gcd(gg, a);
    if (gg != 1) throw precondition_error("stabilize: coefficients are not primitive");
    StabilizeTrace tr;
    tr.result = normalize_shifts(g);
    // Each step strictly lowers the total valuation sum_p sum_i ord_p(a_i).
    int guard = 1;
    for (auto a : g.coeffs)
        for (auto q : prime_divisors(a)) guard += ord_p(a, q);
    for (;;) {
        auto bad = unstable_primes(tr.result);
        if (bad.empty()) break;
        if (static_cast<int>(tr.steps.size()) >= guard)
            throw std::logic_error("stabilize: valuation guard exceeded");
        auto st = coset_watson_step_traced(tr.result, bad.front());
        tr.result = st.form;
        tr.steps.push_back(st.step);
    }
    tr.result = sorted_form(tr.result);
    return tr;
}

inline ShiftedForm stabilize(const ShiftedForm& g) { return stabilize_traced(g).result; }

}  // namespace polyreg
