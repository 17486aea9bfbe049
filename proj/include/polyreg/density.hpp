#pragma once
// psi_p, eta(n, s) and the per-prime exception count.

#include "polyreg/localrep.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace polyreg {

namespace detail {
inline Rational psi_pp_formula(std::int64_t p, int s) {
    const BigInt ps = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(s));
    const BigInt num = (s % 2 == 1) ? ps + p + 2 : ps + 2 * p + 1;
    return Rational(num, BigInt(2 * p + 2));
}
}  // namespace detail

/// psi_p(p^s): (p^s+p+2)/(2p+2) for odd s, (p^s+2p+1)/(2p+2) for even s.
inline Rational psi_prime_power(std::int64_t p, int s) {
    if (p < 5 || !is_prime(p)) throw precondition_error("psi_prime_power: p must be a prime >= 5");
    if (s < 1) throw precondition_error("psi_prime_power: s must be >= 1");
    return detail::psi_pp_formula(p, s);
}

/// With n = b_e ... b_1 b_0 in base p: sum_{s>=1} b_s psi_p(p^s), plus 1 when b_0 != 0.
inline Rational psi(std::int64_t p, std::int64_t n) {
    if (p < 5 || !is_prime(p)) throw precondition_error("psi: p must be a prime >= 5");
    if (n < 1) throw precondition_error("psi: n must be >= 1");
    Rational acc = (n % p != 0) ? 1 : 0;
    n /= p;
    for (int s = 1; n > 0; ++s, n /= p) {
        const std::int64_t b = n % p;
        if (b) acc += b * detail::psi_pp_formula(p, s);
    }
    return acc;
}

/// psi_p(n) for p > n is 1.
inline std::int64_t psi_int(std::int64_t p, std::int64_t n) {
    const Rational v = psi(p, n);
    if (boost::multiprecision::denominator(v) != 1) throw std::logic_error("psi: non-integral value");
    return static_cast<std::int64_t>(boost::multiprecision::numerator(v));
}

/// psi_p(n) for the primes 5 <= p <= cutoff, in descending order of value.
inline std::vector<std::int64_t> psi_values_desc(std::int64_t n, std::int64_t cutoff) {
    std::vector<std::int64_t> vals;
    for (auto p : PrimeSeq::global().up_to(cutoff)) vals.push_back(psi_int(p, n));
    std::sort(vals.rbegin(), vals.rend());
    return vals;
}

/// eta(n, s) = n - (sum of the s largest psi_p(n)). Primes above max(n, cutoff)
/// contribute 1 each; the default cutoff n covers every prime with psi > 1.
inline std::int64_t eta(std::int64_t n, int s, std::int64_t cutoff = 0) {
    if (n < 1 || s < 1) throw precondition_error("eta: n and s must be >= 1");
    auto vals = psi_values_desc(n, std::max(n, cutoff));
    std::int64_t total = 0;
    for (int i = 0; i < s; ++i) total += (static_cast<std::size_t>(i) < vals.size()) ? vals[static_cast<std::size_t>(i)] : 1;
    return n - total;
}

struct ExceptionCount {
    std::int64_t count = 0;
    Rational bound;
    bool pass = false;
};

/// Number of n in [1, p^s] with u n + v not represented by L over Z_p,
/// against the bound psi_p(p^s).
inline ExceptionCount exception_count_check(std::int64_t p, int s, const DiagonalLattice& L, std::int64_t u,
                                            std::int64_t v) {
    if (p == 2 || !is_prime(p)) throw precondition_error("exception_count_check: p must be an odd prime");
    if (s < 1) throw precondition_error("exception_count_check: s must be >= 1");
    if (u % p == 0) throw precondition_error("exception_count_check: u must be coprime to p");
    if (!is_p_stable(L, p)) throw precondition_error("exception_count_check: lattice is not p-stable");
    ExceptionCount r;
    const std::int64_t top = ipow(p, s);
    for (std::int64_t n = 1; n <= top; ++n)
        if (!local_represents(L, u * n + v, p)) ++r.count;
    r.bound = detail::psi_pp_formula(p, s);
    r.pass = Rational(r.count) <= r.bound;
    return r;
}

}  // namespace polyreg
