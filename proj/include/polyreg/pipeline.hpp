#pragma once
// Constructive helpers used by the bound derivation: the progression residue
// nu over Z_2 (and Z_3), the non-representation shift v at a prime p, and
// the coprime shift over a set of primes.

#include "polyreg/density.hpp"
#include "polyreg/localrep.hpp"

#include <optional>

namespace polyreg {

namespace detail {

// Every element of r + M Z_p (M = p^a) is represented by L over Z_p. Residues
// are sampled modulo M p^extra, which covers every square class of valuation
// below a + extra - 2; deeper classes are taken on the sampled evidence.
inline bool coset_represented(const DiagonalLattice& L, std::int64_t p, std::int64_t r, int a, int extra) {
    const std::int64_t M = ipow(p, a);
    const std::int64_t span = ipow(p, extra);
    for (std::int64_t z = 0; z < span; ++z)
        if (!local_represents(L, r + M * z, p)) return false;
    return true;
}

inline int coset_sample_depth(const DiagonalLattice& L, std::int64_t p) {
    int mx = 0;
    for (auto a : L.entries) mx = std::max(mx, ord_p(a, p));
    return 2 * mx + 6;
}

}  // namespace detail

/// Smallest nu in {0,1,2} with u(4n+nu)+l represented by L over Z_2 for all
/// n; with also_3, smallest nu in {0,...,4} with u(12n+nu)+l represented over
/// Z_2 and Z_3. nullopt signals a counterexample to the progression lemma.
inline std::optional<int> find_nu(const DiagonalLattice& L, std::int64_t u, std::int64_t l, bool also_3) {
    if (u % 2 == 0) throw precondition_error("find_nu: u must be odd");
    if (!is_2_stable(L)) throw precondition_error("find_nu: lattice is not 2-stable");
    if (also_3) {
        if (u % 3 == 0) throw precondition_error("find_nu: u must be coprime to 6");
        if (!is_p_stable(L, 3)) throw precondition_error("find_nu: lattice is not 3-stable");
    }
    const int d2 = detail::coset_sample_depth(L, 2);
    const int d3 = detail::coset_sample_depth(L, 3);
    const int top = also_3 ? 4 : 2;
    for (int nu = 0; nu <= top; ++nu) {
        const std::int64_t r = u * nu + l;
        // {u(4n+nu)+l} is dense in r + 4 Z_2; with 12u, also in r + 3 Z_3.
        if (!detail::coset_represented(L, 2, r, 2, d2)) continue;
        if (also_3 && !detail::coset_represented(L, 3, r, 1, d3)) continue;
        return nu;
    }
    return std::nullopt;
}

struct FindVResult {
    std::int64_t v = 0;
    int branch = 0;  // 1: p | a3, p | alpha3;  2: p | a3, p !| alpha3;  3: p | a1 a2
};

/// The four clauses for v, checked through the local engine.
inline bool find_v_clauses_hold(std::int64_t p, std::int64_t u, std::array<std::int64_t, 3> a,
                                std::array<std::int64_t, 3> alpha, std::int64_t v) {
    const std::int64_t X = u * v + a[0] * alpha[0] * alpha[0] + a[1] * alpha[1] * alpha[1];
    const std::int64_t Y = X + a[2] * alpha[2] * alpha[2];
    if (!(0 < v && v < p * p)) return false;
    const std::vector<std::int64_t> bin{a[0], a[1]};
    if (local_represents(bin, X, p)) return false;
    if (!local_represents(DiagonalLattice{a[0], a[1], a[2]}, Y, p)) return false;
    if (X == 0 || Y == 0) return false;
    return ord_p(X, p) <= 1 && ord_p(Y, p) <= 1;
}

/// v with (i) 0 < v < p^2, (ii) uv + a1 al1^2 + a2 al2^2 not represented by
/// <a1,a2>, (iii) adding a3 al3^2 gives a value represented by <a1,a2,a3>,
/// (iv) both values have ord_p <= 1. Requires <a1,a2,a3> = <1,-Delta> _|_ <p eps>.
inline FindVResult find_v(std::int64_t p, std::int64_t u, std::array<std::int64_t, 3> a,
                          std::array<std::int64_t, 3> alpha) {
    if (p < 5 || !is_prime(p)) throw precondition_error("find_v: p must be a prime >= 5");
    if (u <= 0 || u % p == 0) throw precondition_error("find_v: u must be positive and coprime to p");
    for (int i = 0; i < 3; ++i)
        if (a[i] <= 0 || alpha[i] <= 0) throw precondition_error("find_v: entries and shifts must be positive");
    const DiagonalLattice L{a[0], a[1], a[2]};
    if (odd_stable_kind(L, p) != OddStableKind::anisotropic)
        throw precondition_error("find_v: lattice is not <1,-Delta> _|_ <p eps> over Z_p");
    const std::int64_t P2 = p * p;
    auto solve_mod = [&](std::int64_t target, std::int64_t M, std::int64_t base) {
        return mulmod(mod(target - base, M), invmod(u, M), M);
    };
    FindVResult res;
    if (a[2] % p == 0) {
        const std::int64_t base = a[0] * alpha[0] * alpha[0] + a[1] * alpha[1] * alpha[1];
        if (alpha[2] % p == 0) {
            res.branch = 1;
            res.v = solve_mod(a[2], P2, base);
        } else {
            res.branch = 2;
            std::int64_t t = 1;
            while (!(mod(t - alpha[2] * alpha[2], p) != 0 && legendre(t, p) == 1)) ++t;
            res.v = solve_mod(mulmod(a[2], t - alpha[2] * alpha[2], P2), P2, base);
        }
    } else {
        // Relabel so that the p-entry sits in the second slot.
        if (a[0] % p == 0) {
            std::swap(a[0], a[1]);
            std::swap(alpha[0], alpha[1]);
        }
        res.branch = 3;
        const std::int64_t base = a[0] * alpha[0] * alpha[0] + a[1] * alpha[1] * alpha[1];
        std::int64_t ap = 1;
        while (!(mod(ap + a[2] * alpha[2] * alpha[2], p) != 0 && legendre(ap, p) == -legendre(a[0], p))) ++ap;
        res.v = solve_mod(ap, p, base);
    }
    return res;
}

struct CoprimeShift {
    std::int64_t n = 0;
    std::int64_t bound = 0;  // (s+4) 2^{s-2}, or p_1 for the single-prime fallback
    bool fallback = false;   // s = 1: outside the lemma's range, found by direct scan
};

/// Smallest n >= 0 with gcd(un + v, p_1 ... p_s) = 1.
inline CoprimeShift find_coprime_shift(std::span<const std::int64_t> primes, std::int64_t u, std::int64_t v) {
    if (primes.empty()) throw precondition_error("find_coprime_shift: no primes");
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] < 5 || !is_prime(primes[i])) throw precondition_error("find_coprime_shift: primes must be >= 5");
        if (i && primes[i] <= primes[i - 1]) throw precondition_error("find_coprime_shift: primes must increase");
        if (u % primes[i] == 0) throw precondition_error("find_coprime_shift: u shares a prime");
    }
    const int s = static_cast<int>(primes.size());
    CoprimeShift r;
    r.fallback = s == 1;
    r.bound = s == 1 ? primes[0] : (s + 4) * (std::int64_t{1} << (s - 2));
    for (std::int64_t n = 0;; ++n) {
        const std::int64_t x = u * n + v;
        bool ok = true;
        for (auto p : primes)
            if (mod(x, p) == 0) {
                ok = false;
                break;
            }
        if (ok) {
            r.n = n;
            if (n >= r.bound) throw std::logic_error("find_coprime_shift: shift exceeds the lemma bound");
            return r;
        }
    }
}

inline CoprimeShift find_coprime_shift(std::initializer_list<std::int64_t> primes, std::int64_t u, std::int64_t v) {
    return find_coprime_shift(std::span<const std::int64_t>(primes.begin(), primes.size()), u, v);
}

}  // namespace polyreg
