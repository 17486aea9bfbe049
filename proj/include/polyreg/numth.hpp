#pragma once
// Exact integer substrate: primes >= 5, p-adic valuations, residue symbols,
// unit square classes and arbitrary-precision products.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyreg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when an operation is called outside its documented domain.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

// ---------------------------------------------------------------------------
// Modular helpers (fixed width; moduli must stay below 2^62).

/// Representative of a in [0, m).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

inline std::int64_t powmod(std::int64_t base, std::uint64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    base = mod(base, m);
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline std::int64_t invmod(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw precondition_error("invmod: argument not invertible");
    return mod(old_s, m);
}

/// p^e, throwing if it does not fit below 2^62.
inline std::int64_t ipow(std::int64_t p, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (std::int64_t{1} << 62) / p) throw std::overflow_error("ipow: modulus too large");
        r *= p;
    }
    return r;
}

inline bool fits_power(std::int64_t p, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (std::int64_t{1} << 62) / p) return false;
        r *= p;
    }
    return true;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Distinct prime divisors of |n| in ascending order (trial division).
inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    n = std::llabs(n);
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// ---------------------------------------------------------------------------
// Primes >= 5.

/// Ascending cache of the primes >= 5, grown by segmented sieving.
/// Readers share the cache; growth takes the exclusive lock.
class PrimeSeq {
public:
    /// The i-th prime >= 5 (1-based): r_1 = 5, r_2 = 7, r_3 = 11, ...
    std::int64_t nth(std::size_t i) {
        if (i == 0) throw precondition_error("nth_prime_ge5: index must be >= 1");
        {
            std::shared_lock lock(mutex_);
            if (i <= primes_.size()) return primes_[i - 1];
        }
        std::unique_lock lock(mutex_);
        while (primes_.size() < i) grow();
        return primes_[i - 1];
    }

    /// All primes p with 5 <= p <= limit.
    std::vector<std::int64_t> up_to(std::int64_t limit) {
        {
            std::shared_lock lock(mutex_);
            if (limit <= sieved_to_) return slice(limit);
        }
        std::unique_lock lock(mutex_);
        while (sieved_to_ < limit) grow();
        return slice(limit);
    }

    static PrimeSeq& global() {
        static PrimeSeq instance;
        return instance;
    }

private:
    std::vector<std::int64_t> slice(std::int64_t limit) const {
        auto end = std::upper_bound(primes_.begin(), primes_.end(), limit);
        return {primes_.begin(), end};
    }

    // Sieve the next segment (sieved_to_, 2*sieved_to_ + 64].
    void grow() {
        const std::int64_t lo = sieved_to_ + 1;
        const std::int64_t hi = sieved_to_ * 2 + 64;
        std::vector<bool> composite(static_cast<std::size_t>(hi - lo + 1), false);
        for (std::int64_t d = 2; d * d <= hi; ++d) {
            std::int64_t start = std::max(d * d, (lo + d - 1) / d * d);
            for (std::int64_t k = start; k <= hi; k += d) composite[static_cast<std::size_t>(k - lo)] = true;
        }
        for (std::int64_t k = std::max<std::int64_t>(lo, 5); k <= hi; ++k)
            if (!composite[static_cast<std::size_t>(k - lo)]) primes_.push_back(k);
        sieved_to_ = hi;
    }

    std::shared_mutex mutex_;
    std::vector<std::int64_t> primes_;
    std::int64_t sieved_to_ = 4;
};

inline std::int64_t nth_prime_ge5(std::size_t i) { return PrimeSeq::global().nth(i); }

// ---------------------------------------------------------------------------
// Valuations, symbols, square classes.

/// Largest e with p^e | n. n = 0 has infinite valuation and is rejected.
inline int ord_p(std::int64_t n, std::int64_t p) {
    if (n == 0) throw precondition_error("ord_p: zero has infinite valuation");
    if (p < 2) throw precondition_error("ord_p: p must be prime");
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

inline int ord_p(const BigInt& n, std::int64_t p) {
    if (n == 0) throw precondition_error("ord_p: zero has infinite valuation");
    BigInt m = abs(n);
    int e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    return e;
}

/// n with every factor p removed (sign kept).
inline std::int64_t unit_part(std::int64_t n, std::int64_t p) {
    if (n == 0) throw precondition_error("unit_part: zero");
    while (n % p == 0) n /= p;
    return n;
}

/// Legendre symbol (a/p) for an odd prime p.
inline int legendre(std::int64_t a, std::int64_t p) {
    if (p < 3 || p % 2 == 0) throw precondition_error("legendre: p must be an odd prime");
    std::int64_t r = mod(a, p);
    if (r == 0) return 0;
    return powmod(r, static_cast<std::uint64_t>((p - 1) / 2), p) == 1 ? 1 : -1;
}

/// Square class of a p-adic unit: for odd p whether it is a square, for p = 2
/// its residue mod 8.
struct UnitClass {
    std::int64_t p = 0;
    bool square = false;
    int residue8 = 0;

    friend bool operator==(const UnitClass&, const UnitClass&) = default;
};

inline UnitClass unit_class(std::int64_t u, std::int64_t p) {
    if (mod(u, p) == 0) throw precondition_error("unit_class: not a p-adic unit");
    UnitClass c;
    c.p = p;
    if (p == 2) {
        c.residue8 = static_cast<int>(mod(u, 8));
        c.square = c.residue8 == 1;
    } else {
        c.square = legendre(u, p) == 1;
    }
    return c;
}

/// Whether the unit u is a square in Z_p.
inline bool is_unit_square(std::int64_t u, std::int64_t p) { return unit_class(u, p).square; }

/// Hilbert symbol (a, b)_p for nonzero integers a, b.
inline int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p) {
    if (a == 0 || b == 0) throw precondition_error("hilbert_symbol: zero argument");
    const int alpha = ord_p(a, p), beta = ord_p(b, p);
    const std::int64_t u = unit_part(a, p), v = unit_part(b, p);
    if (p != 2) {
        int sign = ((p - 1) / 2 % 2 == 1 && alpha % 2 == 1 && beta % 2 == 1) ? -1 : 1;
        int lu = legendre(u, p), lv = legendre(v, p);
        int r = sign;
        if (beta % 2 == 1) r *= lu;
        if (alpha % 2 == 1) r *= lv;
        return r;
    }
    auto eps = [](std::int64_t w) { return static_cast<int>(((mod(w, 8) - 1) / 2) % 2); };
    auto omega = [](std::int64_t w) {
        std::int64_t r = mod(w, 16);
        return static_cast<int>(((r * r - 1) / 8) % 2);
    };
    int e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
    return e % 2 == 0 ? 1 : -1;
}

/// A root of x^2 = w modulo p^k for a unit w that is a square in Z_p.
/// For p = 2 this requires w = 1 mod 8 and k >= 3.
inline std::optional<std::int64_t> sqrt_unit_mod(std::int64_t w, std::int64_t p, int k) {
    const std::int64_t M = ipow(p, k);
    w = mod(w, M);
    if (p == 2) {
        if (k <= 3) {
            for (std::int64_t x = 1; x < M; x += 2)
                if (mulmod(x, x, M) == mod(w, M)) return x;
            return std::nullopt;
        }
        if (mod(w, 8) != 1) return std::nullopt;
        // x_{j+1} = x_j + (w - x_j^2)/2 keeps x^2 = w mod 2^{j+1} as j grows.
        std::int64_t x = 1;
        for (int j = 3; j < k; ++j) {
            const std::int64_t Mj = ipow(2, j + 1);
            if (mod(mulmod(x, x, Mj) - w, Mj) != 0) x += ipow(2, j - 1);
        }
        x = mod(x, M);
        if (mulmod(x, x, M) != w) return std::nullopt;
        return x;
    }
    if (legendre(w, p) != 1) return std::nullopt;
    std::int64_t x = -1;
    for (std::int64_t r = 1; r < p; ++r)
        if (mulmod(r, r, p) == mod(w, p)) {
            x = r;
            break;
        }
    // Newton lift x <- x - (x^2 - w) / (2x); precision doubles per round.
    for (int prec = 1; prec < k; prec *= 2) {
        std::int64_t f = mod(mulmod(x, x, M) - w, M);
        x = mod(x - mulmod(f, invmod(2 * x, M), M), M);
    }
    return mod(x, M);
}

// ---------------------------------------------------------------------------
// Exact products.

/// Exact product; the empty product is 1.
inline BigInt big_product(std::span<const std::int64_t> seq) {
    BigInt acc = 1;
    for (auto v : seq) acc *= v;
    return acc;
}

inline BigInt big_product(std::initializer_list<std::int64_t> seq) {
    return big_product(std::span<const std::int64_t>(seq.begin(), seq.size()));
}

/// r_lo * r_{lo+1} * ... * r_hi over the primes >= 5 (empty when hi < lo).
inline BigInt prime_range_product(std::size_t lo, std::size_t hi) {
    BigInt acc = 1;
    for (std::size_t i = lo; i <= hi; ++i) acc *= nth_prime_ge5(i);
    return acc;
}

inline BigInt pow2(int e) {
    BigInt r = 1;
    r <<= e;
    return r;
}

}  // namespace polyreg
