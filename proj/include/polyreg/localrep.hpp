#pragma once
// Representation of integers by diagonal lattices over Z_p, Jordan splittings,
// anisotropy, and the p-stability / 2-stability tests.
//
// Decision procedure. Write the entries as p^{e_i} u_i. After dividing out
// p^{min e_i}, a solution of sum a_i x_i^2 = n either has some unit-entry
// coordinate x_i that is a p-adic unit, in which case Hensel's lemma reduces
// the question to a congruence mod p (mod 8 for p = 2), or all unit-entry
// coordinates are divisible by p, in which case x_i = p y_i multiplies those
// entries by p^2. Each round strictly lowers ord_p(n), so the loop is finite.
// Every witness is re-expressed in the original coordinates, lifted to
// p^K, and accepted only if some coordinate satisfies the Hensel criterion
// 2 ord_p(2 a_i x_i) < K.

#include "polyreg/numth.hpp"
#include "polyreg/polygonal.hpp"

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace polyreg {

/// <a_1, ..., a_k> with positive entries. scale_exp records the power of each
/// prime divided out by Watson transformations applied to this lattice.
struct DiagonalLattice {
    std::vector<std::int64_t> entries;
    std::map<std::int64_t, int> scale_exp;

    DiagonalLattice() = default;
    DiagonalLattice(std::initializer_list<std::int64_t> e) : DiagonalLattice(std::vector<std::int64_t>(e)) {}
    explicit DiagonalLattice(std::vector<std::int64_t> e) : entries(std::move(e)) {
        if (entries.empty()) throw precondition_error("DiagonalLattice: empty");
        for (auto v : entries)
            if (v < 1) throw precondition_error("DiagonalLattice: entries must be positive");
    }

    std::size_t rank() const { return entries.size(); }

    /// Sum of ord_p over the entries (ord_p of the determinant).
    int det_ord(std::int64_t p) const {
        int s = 0;
        for (auto v : entries) s += ord_p(v, p);
        return s;
    }

    std::int64_t evaluate(std::span<const std::int64_t> x) const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < entries.size(); ++i) s += entries[i] * x[i] * x[i];
        return s;
    }

    friend bool operator==(const DiagonalLattice& a, const DiagonalLattice& b) { return a.entries == b.entries; }
};

struct JordanBlock {
    int exponent = 0;
    std::vector<std::size_t> indices;  // coordinates of the lattice in this block
    std::vector<UnitClass> units;
};

struct JordanSplit {
    std::int64_t p = 0;
    std::vector<JordanBlock> blocks;  // exponents strictly increasing

    /// Rank of the block with exponent 0 (the unimodular component).
    std::size_t unimodular_rank() const {
        return (!blocks.empty() && blocks.front().exponent == 0) ? blocks.front().indices.size() : 0;
    }
};

/// Groups the entries by p-valuation and classifies their unit parts.
inline JordanSplit jordan_split(const DiagonalLattice& L, std::int64_t p) {
    JordanSplit js;
    js.p = p;
    std::map<int, JordanBlock> by_exp;
    for (std::size_t i = 0; i < L.rank(); ++i) {
        const int e = ord_p(L.entries[i], p);
        auto& b = by_exp[e];
        b.exponent = e;
        b.indices.push_back(i);
        b.units.push_back(unit_class(unit_part(L.entries[i], p), p));
    }
    for (auto& [e, b] : by_exp) js.blocks.push_back(std::move(b));
    return js;
}

struct LocalVerdict {
    std::int64_t p = 0;
    bool represented = false;
    int modulus_exp = 0;                               // K: witness is a solution mod p^K
    std::optional<std::vector<std::int64_t>> witness;  // absent when unrepresented or p^K overflows
    int certificate = -1;                              // min 2 ord_p(2 a_i x_i) over the witness
};

/// K = ord_p(n) + 2 ord_p(2 prod a_i) + 3 (ord_p(0) counted as 0).
inline int default_modulus_exp(std::span<const std::int64_t> entries, std::int64_t n, std::int64_t p) {
    int det = p == 2 ? 1 : 0;
    for (auto a : entries) det += ord_p(a, p);
    return (n == 0 ? 0 : ord_p(n, p)) + 2 * det + 3;
}

namespace detail {

// Record of the successful branch of the decision loop.
struct RepPath {
    std::vector<int> lifts;               // x_i = p^{lifts_i} y_i
    std::size_t unit_coord = 0;           // coordinate solved by Hensel lifting
    std::vector<std::int64_t> residues;   // y_i for the other coordinates
    int divided = 0;                      // total power of p divided out
};

// Solve the congruence level for odd p: some unit-entry coordinate nonzero,
// sum_{e_i = 0} u_i y_i^2 = target (mod p). Fills residues when path != null.
inline bool odd_unit_level(std::span<const std::int64_t> units, std::span<const int> exps, std::int64_t target_mod_p,
                           std::int64_t p, RepPath* path) {
    std::vector<std::size_t> U;
    for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i] == 0) U.push_back(i);
    if (U.empty()) return false;
    bool ok;
    if (U.size() == 1) {
        ok = target_mod_p != 0 && legendre(target_mod_p * mod(units[U[0]], p), p) == 1;
    } else if (U.size() == 2) {
        ok = target_mod_p != 0 || legendre(-mod(units[U[0]], p) * mod(units[U[1]], p), p) == 1;
    } else {
        ok = true;
    }
    if (!ok || path == nullptr) return ok;

    // Explicit residues: fix all unit-entry coordinates but one, pick the last
    // as a nonzero square root.
    std::vector<std::int64_t> root(static_cast<std::size_t>(p), -1);
    for (std::int64_t y = 1; y < p; ++y) root[static_cast<std::size_t>(mulmod(y, y, p))] = y;
    path->residues.assign(exps.size(), 0);
    const std::size_t f = U[0];
    const std::int64_t uf_inv = invmod(units[f], p);
    auto try_rest = [&](auto&& self, std::size_t k, std::int64_t acc) -> bool {
        if (k == U.size()) {
            const std::int64_t w = mulmod(mod(target_mod_p - acc, p), uf_inv, p);
            if (w != 0 && root[static_cast<std::size_t>(w)] > 0) {
                path->residues[f] = root[static_cast<std::size_t>(w)];
                path->unit_coord = f;
                return true;
            }
            return false;
        }
        // Only two free coordinates are ever needed.
        const std::int64_t limit = k <= 2 ? p : 1;
        for (std::int64_t y = 0; y < limit; ++y) {
            path->residues[U[k]] = y;
            if (self(self, k + 1, mod(acc + mulmod(units[U[k]], y * y, p), p))) return true;
        }
        path->residues[U[k]] = 0;
        return false;
    };
    return try_rest(try_rest, 1, 0);
}

// p = 2: search y_i mod 4 (squares mod 8 depend on y mod 4) with an odd
// unit-entry coordinate and sum u_i 2^{e_i} y_i^2 = target (mod 8).
inline bool two_unit_level(std::span<const std::int64_t> units, std::span<const int> exps, std::int64_t target_mod8,
                           RepPath* path) {
    const std::size_t k = exps.size();
    std::vector<std::int64_t> coef(k);
    bool any_unit = false;
    for (std::size_t i = 0; i < k; ++i) {
        coef[i] = exps[i] >= 3 ? 0 : mod(units[i] * (std::int64_t{1} << exps[i]), 8);
        any_unit = any_unit || exps[i] == 0;
    }
    if (!any_unit) return false;
    std::vector<std::int64_t> y(k, 0);
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= (coef[i] == 0 ? 1 : 4);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        std::int64_t s = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (coef[i] == 0) {
                y[i] = 0;
                continue;
            }
            y[i] = static_cast<std::int64_t>(c % 4);
            c /= 4;
            s += coef[i] * y[i] * y[i];
        }
        if (mod(s - target_mod8, 8) != 0) continue;
        for (std::size_t i = 0; i < k; ++i) {
            if (exps[i] == 0 && y[i] % 2 == 1) {
                if (path) {
                    path->residues = y;
                    path->unit_coord = i;
                }
                return true;
            }
        }
    }
    return false;
}

// Exact decision for n != 0; fills path on success.
inline bool decide(std::span<const std::int64_t> entries, std::int64_t n, std::int64_t p, RepPath* path) {
    const std::size_t k = entries.size();
    std::vector<std::int64_t> units(k);
    std::vector<int> exps(k);
    std::vector<int> lifts(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        exps[i] = ord_p(entries[i], p);
        units[i] = unit_part(entries[i], p);
    }
    int vn = ord_p(n, p);
    const std::int64_t un = unit_part(n, p);
    int divided = 0;
    for (;;) {
        const int emin = *std::min_element(exps.begin(), exps.end());
        if (vn < emin) return false;
        for (auto& e : exps) e -= emin;
        vn -= emin;
        divided += emin;
        bool ok;
        if (p == 2) {
            const std::int64_t t = vn >= 3 ? 0 : mod(un * (std::int64_t{1} << vn), 8);
            ok = two_unit_level(units, exps, t, path);
        } else {
            const std::int64_t t = vn > 0 ? 0 : mod(un, p);
            ok = odd_unit_level(units, exps, t, p, path);
        }
        if (ok) {
            if (path) {
                path->lifts = lifts;
                path->divided = divided;
            }
            return true;
        }
        for (std::size_t i = 0; i < k; ++i)
            if (exps[i] == 0) {
                exps[i] = 2;
                ++lifts[i];
            }
    }
}

// Witness mod p^K from a successful path; nullopt when p^K overflows.
inline std::optional<std::vector<std::int64_t>> build_witness(std::span<const std::int64_t> entries, std::int64_t n,
                                                              std::int64_t p, int K, const RepPath& path) {
    if (!fits_power(p, K)) return std::nullopt;
    const std::int64_t M = ipow(p, K);
    const std::size_t k = entries.size();
    std::vector<std::int64_t> x(k, 0);
    std::int64_t rest = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (i == path.unit_coord) continue;
        if (path.lifts[i] >= K) continue;
        x[i] = mulmod(ipow(p, path.lifts[i]), path.residues[i], M);
        rest = mod(rest + mulmod(entries[i], mulmod(x[i], x[i], M), M), M);
    }
    const std::size_t f = path.unit_coord;
    const int E = path.divided;
    if (E >= K) return std::nullopt;
    const std::int64_t T = mod(n - rest, M);
    const std::int64_t pE = ipow(p, E);
    if (T % pE != 0) return std::nullopt;
    const std::int64_t ME = M / pE;
    const std::int64_t w = mulmod(T / pE, invmod(unit_part(entries[f], p), ME), ME);
    auto y = sqrt_unit_mod(w, p, K - E);
    if (!y) return std::nullopt;
    if (path.lifts[f] < K) x[f] = mulmod(ipow(p, path.lifts[f]), *y, M);
    return x;
}

inline int witness_certificate(std::span<const std::int64_t> entries, std::span<const std::int64_t> x, std::int64_t p,
                               int K) {
    const std::int64_t M = ipow(p, K);
    int best = -1;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::int64_t xi = mod(x[i], M);
        if (xi == 0) continue;
        const int o = ord_p(xi, p) + ord_p(entries[i], p) + (p == 2 ? 1 : 0);
        if (best < 0 || 2 * o < best) best = 2 * o;
    }
    return best;
}

}  // namespace detail

/// Fast decision: is n in Q(L (x) Z_p)? (n = 0 is always represented.)
inline bool local_represents(std::span<const std::int64_t> entries, std::int64_t n, std::int64_t p) {
    if (n == 0) return true;
    return detail::decide(entries, n, p, nullptr);
}

inline bool local_represents(const DiagonalLattice& L, std::int64_t n, std::int64_t p) {
    return local_represents(L.entries, n, p);
}

/// Decision with witness. K defaults to default_modulus_exp; a smaller K can
/// only turn a verdict into false (the certificate no longer fits).
inline LocalVerdict represents_over_zp(const DiagonalLattice& L, std::int64_t n, std::int64_t p,
                                       std::optional<int> K = std::nullopt) {
    if (L.rank() < 1 || L.rank() > 4) throw precondition_error("represents_over_zp: rank must be 1..4");
    LocalVerdict v;
    v.p = p;
    v.modulus_exp = K.value_or(default_modulus_exp(L.entries, n, p));
    if (n == 0) {
        v.represented = true;
        v.witness = std::vector<std::int64_t>(L.rank(), 0);
        return v;
    }
    detail::RepPath path;
    if (!detail::decide(L.entries, n, p, &path)) return v;
    const std::size_t f = path.unit_coord;
    v.certificate = 2 * (ord_p(L.entries[f], p) + path.lifts[f] + (p == 2 ? 1 : 0));
    auto w = detail::build_witness(L.entries, n, p, v.modulus_exp, path);
    if (w) {
        const std::int64_t M = ipow(p, v.modulus_exp);
        std::int64_t q = 0;
        for (std::size_t i = 0; i < L.rank(); ++i) q = mod(q + mulmod(L.entries[i], mulmod((*w)[i], (*w)[i], M), M), M);
        if (q != mod(n, M)) throw std::logic_error("represents_over_zp: witness does not solve the congruence");
        v.certificate = detail::witness_certificate(L.entries, *w, p, v.modulus_exp);
        v.witness = std::move(w);
    }
    v.represented = v.certificate >= 0 && v.certificate < v.modulus_exp;
    if (!v.represented) v.witness.reset();
    return v;
}

// ---------------------------------------------------------------------------
// Anisotropy.

namespace detail {
// Small integer with the same square class as a in Q_p.
inline std::int64_t square_class_rep(std::int64_t a, std::int64_t p) {
    const int e = ord_p(a, p) % 2;
    const std::int64_t u = unit_part(a, p);
    const std::int64_t m = p == 2 ? 8 : p;
    return (e ? p : 1) * mod(u, m);
}
}  // namespace detail

/// No nontrivial zero over Q_p: <a,b,c> is isotropic iff (-ac, -bc)_p = 1.
inline bool is_anisotropic_ternary(const DiagonalLattice& L, std::int64_t p) {
    if (L.rank() != 3) throw precondition_error("is_anisotropic_ternary: rank must be 3");
    const std::int64_t a = detail::square_class_rep(L.entries[0], p);
    const std::int64_t b = detail::square_class_rep(L.entries[1], p);
    const std::int64_t c = detail::square_class_rep(L.entries[2], p);
    return hilbert_symbol(-a * c, -b * c, p) == -1;
}

// ---------------------------------------------------------------------------
// Stability.

/// Local shape of an odd-p-stable ternary lattice.
enum class OddStableKind {
    unstable,
    hyperbolic,  // <1,-1> is represented, Q(K_p) = Z_p
    anisotropic  // <1,-Delta_p> _|_ <p eps_p>
};

inline OddStableKind odd_stable_kind(const DiagonalLattice& L, std::int64_t p) {
    if (p == 2) throw precondition_error("is_p_stable: use is_2_stable for p = 2");
    if (L.rank() != 3) throw precondition_error("is_p_stable: rank must be 3");
    std::vector<std::int64_t> units;
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < 3; ++i) {
        if (L.entries[i] % p != 0)
            units.push_back(L.entries[i]);
        else
            others.push_back(i);
    }
    if (units.size() == 3) return OddStableKind::hyperbolic;
    if (units.size() != 2) return OddStableKind::unstable;
    if (legendre(-mod(units[0], p) * mod(units[1], p), p) == 1) return OddStableKind::hyperbolic;
    return ord_p(L.entries[others[0]], p) == 1 ? OddStableKind::anisotropic : OddStableKind::unstable;
}

/// <1,-1> -> L_p, or L_p = <1,-Delta_p> _|_ <p eps_p>.
inline bool is_p_stable(const DiagonalLattice& L, std::int64_t p) {
    return odd_stable_kind(L, p) != OddStableKind::unstable;
}

namespace detail {

// Pair search modulo 2^K: Q(x) = 1, Q(y) = target, B(x,y) = 0 (mod 2^K).
inline bool binary_into_ternary_mod(std::array<std::int64_t, 3> a, std::int64_t target, int K) {
    const std::int64_t M = std::int64_t{1} << K;
    for (auto& v : a) v = mod(v, M);
    std::vector<std::array<std::int64_t, 3>> xs, ys;
    for (std::int64_t i = 0; i < M; ++i)
        for (std::int64_t j = 0; j < M; ++j)
            for (std::int64_t l = 0; l < M; ++l) {
                const std::int64_t q = mod(a[0] * i * i + a[1] * j * j + a[2] * l * l, M);
                if (q == 1) xs.push_back({i, j, l});
                if (q == mod(target, M)) ys.push_back({i, j, l});
            }
    for (const auto& x : xs)
        for (const auto& y : ys)
            if (mod(a[0] * x[0] * y[0] + a[1] * x[1] * y[1] + a[2] * x[2] * y[2], M) == 0) return true;
    return false;
}

// Memo over entries mod 8 for K = 3 (Q and B mod 8 only see a_i mod 8).
inline bool binary_13_or_17_mod8(std::int64_t a0, std::int64_t a1, std::int64_t a2) {
    static const std::array<bool, 512> table = [] {
        std::array<bool, 512> t{};
        for (int i = 0; i < 512; ++i) {
            std::array<std::int64_t, 3> a{i / 64, (i / 8) % 8, i % 8};
            t[static_cast<std::size_t>(i)] = binary_into_ternary_mod(a, 3, 3) || binary_into_ternary_mod(a, 7, 3);
        }
        return t;
    }();
    return table[static_cast<std::size_t>(mod(a0, 8) * 64 + mod(a1, 8) * 8 + mod(a2, 8))];
}

}  // namespace detail

/// L_2 unimodular, or <1,3> -> L_2, or <1,7> -> L_2. The binary
/// representation is decided by pair search modulo 2^K (K >= 3 suffices).
inline bool is_2_stable(const DiagonalLattice& L, int K = 3) {
    if (L.rank() != 3) throw precondition_error("is_2_stable: rank must be 3");
    if (K < 3) throw precondition_error("is_2_stable: modulus exponent must be >= 3");
    if (L.entries[0] % 2 && L.entries[1] % 2 && L.entries[2] % 2) return true;
    if (K == 3) return detail::binary_13_or_17_mod8(L.entries[0], L.entries[1], L.entries[2]);
    std::array<std::int64_t, 3> a{L.entries[0], L.entries[1], L.entries[2]};
    return detail::binary_into_ternary_mod(a, 3, K) || detail::binary_into_ternary_mod(a, 7, K);
}

/// p-stable for odd p, 2-stable for p = 2.
inline bool is_stable_at(const DiagonalLattice& L, std::int64_t p) { return p == 2 ? is_2_stable(L) : is_p_stable(L, p); }

/// K_2 = [[2,1],[1,2]] _|_ <eps>, the one 2-stable shape with a missing unit class.
struct ExceptionalBlock2 {
    std::int64_t epsilon = 1;  // odd
};

/// For a diagonal 2-stable lattice: unimodular and anisotropic means
/// K_2 = [[2,1],[1,2]] _|_ <eps>; returns eps mod 8 in that case.
inline std::optional<std::int64_t> exceptional_epsilon(const DiagonalLattice& L) {
    if (L.rank() != 3) return std::nullopt;
    for (auto v : L.entries)
        if (v % 2 == 0) return std::nullopt;
    if (!is_anisotropic_ternary(L, 2)) return std::nullopt;
    // det = 3 eps (mod squares), so eps = 3 det mod 8.
    return mod(3 * mod(L.entries[0] * L.entries[1], 8) * mod(L.entries[2], 8), 8);
}

/// Q(K_2) = Z_2 minus (eps+4) gamma^2.
inline bool stable_value_set_check(const ExceptionalBlock2& blk, std::int64_t gamma) {
    if (blk.epsilon % 2 == 0) throw precondition_error("ExceptionalBlock2: epsilon must be odd");
    if (gamma == 0) return true;
    if (ord_p(gamma, 2) % 2 != 0) return true;
    return mod(unit_part(gamma, 2), 8) != mod(blk.epsilon + 4, 8);
}

/// Membership of gamma in the closed-form description of Q(L_p):
///   odd p, hyperbolic:    Z_p
///   odd p, anisotropic:   Z_p minus p eps Delta gamma^2
///   p = 2, exceptional:   Z_2 minus (eps+4) gamma^2
///   p = 2, otherwise:     {ord_2 even}, which is only a subset of Q(L_2)
inline bool stable_value_set_check(const DiagonalLattice& L, std::int64_t p, std::int64_t gamma) {
    if (p == 2) {
        if (!is_2_stable(L)) throw precondition_error("stable_value_set_check: lattice is not 2-stable");
        if (auto eps = exceptional_epsilon(L)) return stable_value_set_check(ExceptionalBlock2{*eps}, gamma);
        return gamma == 0 || ord_p(gamma, 2) % 2 == 0;
    }
    const auto kind = odd_stable_kind(L, p);
    if (kind == OddStableKind::unstable) throw precondition_error("stable_value_set_check: lattice is not p-stable");
    if (kind == OddStableKind::hyperbolic || gamma == 0) return true;
    std::int64_t eps = 0;
    for (auto v : L.entries)
        if (v % p == 0) eps = unit_part(v, p);
    if (ord_p(gamma, p) % 2 == 0) return true;
    // gamma / (p eps) must avoid the nonsquare class Delta.
    return legendre(unit_part(gamma, p), p) != -legendre(eps, p);
}

// ---------------------------------------------------------------------------
// Complete quadratic polynomials over Z_p.

namespace detail {

// Residues N mod p^K for which sum a_i (c x_i + alpha_i)^2 = N is solvable
// over Z_p, where p | c.
struct ConstrainedTable {
    std::int64_t modulus = 1;
    std::optional<std::int64_t> residue;  // closed form: exactly this class
    std::vector<char> hit;                // otherwise: residue table
    bool operator()(std::int64_t N) const {
        if (residue) return mod(N, modulus) == *residue;
        return hit[static_cast<std::size_t>(mod(N, modulus))] != 0;
    }
};

// When every alpha_i is a p-unit and t = ord_p(c), the squares of
// alpha + p^t Z_p fill alpha^2 + p^t Z_p (odd p), 1 + 8 Z_2 (p = 2, t = 1)
// or alpha^2 + 2^{t+1} Z_2 (p = 2, t >= 2). The value set is then the single
// class sum a_i alpha_i^2 + p^E Z_p with E = that exponent plus min ord_p(a_i).
inline std::optional<ConstrainedTable> constrained_closed_form(const ShiftedForm& g, std::int64_t p) {
    const int t = ord_p(g.c, p);
    int e = -1;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        if (mod(g.shifts[i], p) == 0) return std::nullopt;
        const int o = ord_p(g.coeffs[i], p);
        if (e < 0 || o < e) e = o;
    }
    const int E = (p == 2 ? (t == 1 ? 3 : t + 1) : t) + e;
    if (!fits_power(p, E)) return std::nullopt;
    ConstrainedTable tab;
    tab.modulus = ipow(p, E);
    std::int64_t r = 0;
    for (std::size_t i = 0; i < g.rank(); ++i)
        r = mod(r + mulmod(g.coeffs[i], mulmod(g.shifts[i], g.shifts[i], tab.modulus), tab.modulus), tab.modulus);
    tab.residue = r;
    return tab;
}

// p | c: solutions have y_i = alpha_i + p^t z_i. When some alpha_i is a
// p-unit every solution carries the certificate ord_p(2 a_i p^t) for that i,
// so a residue search mod p^K with K = 2 min(ord_p(2 a_i) + t) + 1 is exact.
inline ConstrainedTable constrained_search_table(const ShiftedForm& g, std::int64_t p) {
    const int t = ord_p(g.c, p);
    const int two = p == 2 ? 1 : 0;
    int dmin = -1;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        if (mod(g.shifts[i], p) == 0) continue;
        const int d = two + ord_p(g.coeffs[i], p) + t;
        if (dmin < 0 || d < dmin) dmin = d;
    }
    if (dmin < 0) throw precondition_error("shifted_represents_over_zp: every shift is divisible by p");
    const int K = 2 * dmin + 1;
    if (K > 24 || !fits_power(p, K) || ipow(p, K) > (std::int64_t{1} << 22))
        throw std::overflow_error("shifted_represents_over_zp: search modulus too large");
    const std::int64_t M = ipow(p, K);
    const std::int64_t pt = ipow(p, t);
    const std::int64_t zrange = M / pt;
    // reach[cert][r]: residue r reachable, with or without a certified coordinate.
    std::vector<char> reach0(static_cast<std::size_t>(M), 0), reach1(static_cast<std::size_t>(M), 0);
    reach0[0] = 1;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        std::vector<char> vals0(static_cast<std::size_t>(M), 0), vals1(static_cast<std::size_t>(M), 0);
        for (std::int64_t z = 0; z < zrange; ++z) {
            const std::int64_t y = mod(g.shifts[i] + pt * z, M);
            const std::int64_t v = mulmod(g.coeffs[i], mulmod(y, y, M), M);
            bool cert = false;
            if (y != 0) cert = 2 * (two + ord_p(g.coeffs[i], p) + t + ord_p(y, p)) < K;
            (cert ? vals1 : vals0)[static_cast<std::size_t>(v)] = 1;
        }
        std::vector<char> n0(static_cast<std::size_t>(M), 0), n1(static_cast<std::size_t>(M), 0);
        for (std::int64_t r = 0; r < M; ++r) {
            const bool r0 = reach0[static_cast<std::size_t>(r)], r1 = reach1[static_cast<std::size_t>(r)];
            if (!r0 && !r1) continue;
            for (std::int64_t v = 0; v < M; ++v) {
                const bool v0 = vals0[static_cast<std::size_t>(v)], v1 = vals1[static_cast<std::size_t>(v)];
                if (!v0 && !v1) continue;
                const auto s = static_cast<std::size_t>((r + v) % M);
                if (r1 || v1) n1[s] = 1;
                if (r0 && v0) n0[s] = 1;
            }
        }
        reach0.swap(n0);
        reach1.swap(n1);
    }
    ConstrainedTable tab;
    tab.modulus = M;
    tab.hit = std::move(reach1);
    return tab;
}

inline ConstrainedTable constrained_table(const ShiftedForm& g, std::int64_t p) {
    if (auto cf = constrained_closed_form(g, p)) return *cf;
    return constrained_search_table(g, p);
}

inline bool constrained_represents(const ShiftedForm& g, std::int64_t N, std::int64_t p) {
    return constrained_table(g, p)(N);
}

}  // namespace detail

/// N = sum a_i (c x_i + alpha_i)^2 solvable over Z_p. For p not dividing c
/// this is representation by <a_1, ..., a_k>.
inline bool shifted_represents_over_zp(const ShiftedForm& g, std::int64_t N, std::int64_t p) {
    if (g.c % p != 0) return local_represents(g.coeffs, N, p);
    return detail::constrained_represents(g, N, p);
}

/// The shifted form attached to f: conductor c, shifts -d (m = 4 gives c = 1).
inline ShiftedForm shifted_of(const MGonalForm& f) {
    if (f.m == 4) return ShiftedForm(1, f.coeffs, std::vector<std::int64_t>(f.rank(), 0));
    return form_to_shifted(f);
}

/// Primes at which local representation of the shifted target can fail.
inline std::vector<std::int64_t> relevant_primes(const MGonalForm& f, std::int64_t N) {
    const auto k = constants(f.m);
    std::vector<std::int64_t> ps{2, 3};
    auto add = [&](std::int64_t v) {
        for (auto q : prime_divisors(v))
            if (std::find(ps.begin(), ps.end(), q) == ps.end()) ps.push_back(q);
    };
    add(k.c);
    for (auto a : f.coeffs) add(a);
    if (f.rank() <= 2 && N != 0) add(N);
    std::sort(ps.begin(), ps.end());
    return ps;
}

/// Local test for one form, with the p | c residue tables built once.
class LocalTester {
public:
    explicit LocalTester(const MGonalForm& f) : f_(f), g_(shifted_of(f)) {
        for (auto p : prime_divisors(g_.c)) tables_.emplace_back(p, detail::constrained_table(g_, p));
    }

    /// n is represented over R and over every Z_p. Negative n are allowed:
    /// the test runs on the shifted target mu n + d^2 sum a_i.
    bool operator()(std::int64_t n) const {
        const std::int64_t N = shifted_target(f_, n);
        if (N < 0) return false;
        if (N == 0 && g_.c != 1) return false;  // c x_i + alpha_i = 0 has no solution at p | c
        for (const auto& [p, tab] : tables_)
            if (!tab(N)) return false;
        for (auto p : relevant_primes(f_, N))
            if (g_.c % p != 0 && !local_represents(g_.coeffs, N, p)) return false;
        return true;
    }

    const MGonalForm& form() const { return f_; }
    const ShiftedForm& shifted() const { return g_; }

private:
    MGonalForm f_;
    ShiftedForm g_;
    std::vector<std::pair<std::int64_t, detail::ConstrainedTable>> tables_;
};

inline bool locally_represented(const MGonalForm& f, std::int64_t n) { return LocalTester(f)(n); }

}  // namespace polyreg
