#pragma once
// Brute-force global representation, regularity scans up to a bound, and the
// two first-sense examples.

#include "polyreg/localrep.hpp"
#include "polyreg/polygonal.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace polyreg {

/// Pairs (P_m(x), x) with P_m(x) <= N over all integers x, one x per value.
inline std::vector<std::pair<std::int64_t, std::int64_t>> polygonal_values(int m, std::int64_t N) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    if (N < 0) return out;
    const auto r = static_cast<std::int64_t>(std::sqrt(2.0 * static_cast<double>(N) / (m - 2))) + 2;
    std::unordered_map<std::int64_t, std::int64_t> seen;
    for (std::int64_t x = -r; x <= r; ++x) {
        const std::int64_t v = polygonal_number(m, x);
        if (v <= N && !seen.count(v)) {
            seen[v] = x;
            out.emplace_back(v, x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Witness x with f(x) = n, searched over the box a_i P_m(x_i) <= n.
inline std::optional<std::vector<std::int64_t>> represents_globally(const MGonalForm& f, std::int64_t n) {
    if (n < 0) return std::nullopt;
    const auto vals = polygonal_values(f.m, n);
    const std::size_t k = f.rank();
    std::vector<std::int64_t> x(k);
    auto rec = [&](auto&& self, std::size_t i, std::int64_t rest) -> bool {
        if (i + 1 == k) {
            if (rest % f.coeffs[i] != 0) return false;
            const std::int64_t want = rest / f.coeffs[i];
            auto it = std::lower_bound(vals.begin(), vals.end(), std::make_pair(want, std::numeric_limits<std::int64_t>::min()));
            if (it == vals.end() || it->first != want) return false;
            x[i] = it->second;
            return true;
        }
        for (const auto& [v, xi] : vals) {
            if (f.coeffs[i] * v > rest) break;
            x[i] = xi;
            if (self(self, i + 1, rest - f.coeffs[i] * v)) return true;
        }
        return false;
    };
    if (!rec(rec, 0, n)) return std::nullopt;
    return x;
}

/// represented[n] for 0 <= n <= N, by iterated sumsets.
inline std::vector<char> global_table(const MGonalForm& f, std::int64_t N) {
    const auto vals = polygonal_values(f.m, N);
    std::vector<char> reach(static_cast<std::size_t>(N + 1), 0);
    reach[0] = 1;
    for (auto a : f.coeffs) {
        std::vector<char> next(reach.size(), 0);
        for (std::int64_t r = 0; r <= N; ++r) {
            if (!reach[static_cast<std::size_t>(r)]) continue;
            for (const auto& pr : vals) {
                const std::int64_t s = r + a * pr.first;
                if (s > N) break;
                next[static_cast<std::size_t>(s)] = 1;
            }
        }
        reach.swap(next);
    }
    return reach;
}

struct RegularityReport {
    MGonalForm form;
    std::int64_t bound = 0;
    std::int64_t locally_represented_count = 0;
    std::vector<std::int64_t> counterexamples;  // locally but not globally represented
    std::string note;

    bool regular_up_to_bound() const { return counterexamples.empty(); }
    std::string verdict() const {
        return counterexamples.empty() ? "regular-up-to-N" : "not-regular(" + std::to_string(counterexamples.front()) + ")";
    }
};

inline RegularityReport regularity_scan(const MGonalForm& f, std::int64_t N) {
    if (N < 1) throw precondition_error("regularity_scan: bound must be >= 1");
    RegularityReport rep;
    rep.form = f;
    rep.bound = N;
    const LocalTester local(f);
    const auto glob = global_table(f, N);
    for (std::int64_t n = 0; n <= N; ++n) {
        const bool loc = local(n);
        const bool gl = glob[static_cast<std::size_t>(n)] != 0;
        if (gl && !loc) throw std::logic_error("regularity_scan: global representation without local one at " + std::to_string(n));
        if (loc) ++rep.locally_represented_count;
        if (loc && !gl) rep.counterexamples.push_back(n);
    }
    return rep;
}

/// Largest m bound established for the residue class of m, or 0 for m < 3.
inline std::int64_t theorem_bound_for(int m) {
    const bool two3 = m % 3 == 2;
    if (m % 2 == 1) return two3 ? 35 : 147;
    if (m % 4 == 2) return two3 ? 38 : 142;
    return two3 ? 188 : 712;
}

/// Primitive ascending triples a_1 <= a_2 <= a_3 <= coeff_bound that are
/// regular up to N, in lexicographic order. jobs threads split the triples.
inline std::vector<RegularityReport> candidate_scan(int m, std::int64_t coeff_bound, std::int64_t N, unsigned jobs = 1) {
    std::vector<std::array<std::int64_t, 3>> triples;
    for (std::int64_t a = 1; a <= coeff_bound; ++a)
        for (std::int64_t b = a; b <= coeff_bound; ++b)
            for (std::int64_t c = b; c <= coeff_bound; ++c)
                if (std::gcd(std::gcd(a, b), c) == 1) triples.push_back({a, b, c});
    std::vector<std::optional<RegularityReport>> slot(triples.size());
    jobs = std::max(1u, jobs);
    auto work = [&](unsigned w) {
        for (std::size_t i = w; i < triples.size(); i += jobs) {
            auto rep = regularity_scan(MGonalForm(m, {triples[i][0], triples[i][1], triples[i][2]}), N);
            if (rep.regular_up_to_bound()) slot[i] = std::move(rep);
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    std::vector<RegularityReport> out;
    const std::int64_t mb = theorem_bound_for(m);
    for (auto& s : slot)
        if (s) {
            if (m > mb)
                s->note = "candidate only: m exceeds the bound " + std::to_string(mb) +
                          " for its residue class, so a regular form here would contradict the theorem";
            out.push_back(std::move(*s));
        }
    return out;
}

// ---------------------------------------------------------------------------
// First-sense examples.

/// a_1 P_3(x_1) + ... with rational arguments, P_3(x) = x(x+1)/2.
inline Rational triangular_form_value(std::span<const std::int64_t> a, std::span<const Rational> x) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i] * (x[i] + 1) / 2;
    return s;
}

/// Every coordinate has denominator prime to p.
inline bool p_integral(std::span<const Rational> x, std::int64_t p) {
    for (const auto& v : x)
        if (boost::multiprecision::denominator(v) % p == 0) return false;
    return true;
}

struct FirstSenseReport {
    Rational value_z3;         // f at the Z_3 witness
    Rational value_zp;         // f at the witness for p != 3
    bool z3_witness_integral;  // denominators are 3-adic units
    bool zp_witness_integral;  // denominators are powers of 3
    bool quaternary_locally;   // -1 locally represented by p3(1,1,3,6)
    bool ternary_locally;      // -3 locally represented by p3(1,3,27)
    bool ternary_globally;     // -3 globally represented by p3(1,3,27)

    bool ok() const {
        return value_z3 == -1 && value_zp == -1 && z3_witness_integral && zp_witness_integral && quaternary_locally &&
               ternary_locally && !ternary_globally;
    }
};

inline FirstSenseReport first_sense_examples() {
    FirstSenseReport r;
    const std::vector<std::int64_t> a{1, 1, 3, 6};
    const Rational h(-1, 2), t(-1, 3);
    const std::vector<Rational> w3{h, h, Rational(0), h};
    const std::vector<Rational> wp{Rational(0), Rational(0), t, t};
    r.value_z3 = triangular_form_value(a, w3);
    r.value_zp = triangular_form_value(a, wp);
    r.z3_witness_integral = p_integral(w3, 3);
    r.zp_witness_integral = true;
    for (const auto& v : wp) {
        BigInt d = boost::multiprecision::denominator(v);
        while (d % 3 == 0) d /= 3;
        r.zp_witness_integral = r.zp_witness_integral && d == 1;  // a power of 3 is a unit away from 3
    }
    r.quaternary_locally = locally_represented(MGonalForm(3, a), -1);
    const MGonalForm tern(3, {1, 3, 27});
    r.ternary_locally = locally_represented(tern, -3);
    r.ternary_globally = represents_globally(tern, -3).has_value();
    return r;
}

/// Modulus M with local_verdict(n + M) = local_verdict(n): the product over
/// the tested primes of p^K, where K makes the verdict at the shifted target
/// depend only on its residue mod p^K. nullopt if M overflows 63 bits.
inline std::optional<std::int64_t> local_period(const MGonalForm& f, std::int64_t n) {
    const std::int64_t N = shifted_target(f, n);
    if (N <= 0) return std::nullopt;
    const auto g = shifted_of(f);
    BigInt M = 1;
    for (auto p : relevant_primes(f, N)) {
        int K;
        if (g.c % p == 0) {
            K = 0;
            // constrained tables are exact modulo their own modulus
            const auto tab = detail::constrained_table(g, p);
            for (std::int64_t q = tab.modulus; q > 1; q /= p) ++K;
        } else {
            K = default_modulus_exp(g.coeffs, N, p);
        }
        M *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(K));
    }
    if (M > BigInt(std::numeric_limits<std::int64_t>::max() / 64)) return std::nullopt;
    return static_cast<std::int64_t>(M);
}

}  // namespace polyreg
