#pragma once
// Generalized polygonal numbers, the (delta, c, d, mu) constants of an
// m-gonal form, and the translation of a form into a complete quadratic
// polynomial sum a_i (c x_i + alpha_i)^2.

#include "polyreg/numth.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace polyreg {

/// P_m(x) = ((m-2)x^2 - (m-4)x) / 2, defined for every integer x.
inline std::int64_t polygonal_number(int m, std::int64_t x) {
    if (m < 3) throw precondition_error("polygonal_number: m must be >= 3");
    return ((m - 2) * x * x - (m - 4) * x) / 2;
}

/// a_1 P_m(x_1) + ... + a_k P_m(x_k), coefficients kept ascending.
struct MGonalForm {
    int m = 3;
    std::vector<std::int64_t> coeffs;

    MGonalForm() = default;
    MGonalForm(int m_, std::vector<std::int64_t> a) : m(m_), coeffs(std::move(a)) {
        if (m < 3) throw precondition_error("MGonalForm: m must be >= 3");
        if (coeffs.empty()) throw precondition_error("MGonalForm: no coefficients");
        for (auto v : coeffs)
            if (v < 1) throw precondition_error("MGonalForm: coefficients must be positive");
        std::sort(coeffs.begin(), coeffs.end());
    }

    std::size_t rank() const { return coeffs.size(); }

    std::int64_t coeff_sum() const { return std::accumulate(coeffs.begin(), coeffs.end(), std::int64_t{0}); }

    bool primitive() const {
        std::int64_t g = 0;
        for (auto v : coeffs) g = std::gcd(g, v);
        return g == 1;
    }

    std::int64_t evaluate(std::span<const std::int64_t> x) const {
        if (x.size() != coeffs.size()) throw precondition_error("MGonalForm::evaluate: arity mismatch");
        std::int64_t s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += coeffs[i] * polygonal_number(m, x[i]);
        return s;
    }

    friend bool operator==(const MGonalForm&, const MGonalForm&) = default;
};

struct MGonalConstants {
    int m = 0;
    std::int64_t delta = 0;
    std::int64_t c = 0;
    std::int64_t d = 0;
    std::int64_t mu = 0;

    friend bool operator==(const MGonalConstants&, const MGonalConstants&) = default;
};

/// delta = 4, 2, 1 for m odd, m = 2 mod 4, m = 0 mod 4; c = delta(m-2)/2,
/// d = delta(m-4)/4, mu = delta c.
inline MGonalConstants constants(int m) {
    if (m < 3) throw precondition_error("constants: m must be >= 3");
    MGonalConstants k;
    k.m = m;
    k.delta = (m % 2 == 1) ? 4 : (m % 4 == 2 ? 2 : 1);
    k.c = k.delta * (m - 2) / 2;
    k.d = k.delta * (m - 4) / 4;
    k.mu = k.delta * k.c;
    return k;
}

/// mu n + d^2 (a_1 + ... + a_k): n is represented by f exactly when this
/// value is represented by sum a_i (c x_i - d)^2.
inline std::int64_t shifted_target(const MGonalForm& f, std::int64_t n) {
    const auto k = constants(f.m);
    return k.mu * n + k.d * k.d * f.coeff_sum();
}

/// The complete quadratic polynomial sum a_i (c x_i + alpha_i)^2.
struct ShiftedForm {
    std::int64_t c = 1;
    std::vector<std::int64_t> coeffs;
    std::vector<std::int64_t> shifts;

    ShiftedForm() = default;
    ShiftedForm(std::int64_t c_, std::vector<std::int64_t> a, std::vector<std::int64_t> alpha)
        : c(c_), coeffs(std::move(a)), shifts(std::move(alpha)) {
        if (c < 1) throw precondition_error("ShiftedForm: conductor must be positive");
        if (coeffs.size() != shifts.size() || coeffs.empty())
            throw precondition_error("ShiftedForm: coefficient/shift arity mismatch");
        for (auto v : coeffs)
            if (v < 1) throw precondition_error("ShiftedForm: coefficients must be positive");
    }

    std::size_t rank() const { return coeffs.size(); }

    std::int64_t evaluate(std::span<const std::int64_t> x) const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            const std::int64_t y = c * x[i] + shifts[i];
            s += coeffs[i] * y * y;
        }
        return s;
    }

    /// Smallest value over Z^k (each coordinate minimised independently).
    std::int64_t minimum() const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            const std::int64_t r = mod(shifts[i], c);
            const std::int64_t y = std::min(r, c - r);
            s += coeffs[i] * y * y;
        }
        return s;
    }

    /// gcd(alpha_i, c) = 1 for every i.
    bool shifts_coprime() const {
        for (auto a : shifts)
            if (std::gcd(a, c) != 1) return false;
        return true;
    }

    /// 0 < alpha_i < c/2 (alpha_i = c/2 allowed only when c = 2) and coprime to c.
    bool normalized() const {
        for (auto a : shifts) {
            if (a <= 0 || 2 * a > c) return false;
            if (2 * a == c && c != 2) return false;
        }
        return shifts_coprime() && std::is_sorted(coeffs.begin(), coeffs.end());
    }

    friend bool operator==(const ShiftedForm&, const ShiftedForm&) = default;
};

/// Sum a_i (c x_i + d)^2 with the coefficients of f (which equals
/// sum a_i (c x_i - d)^2 after x_i -> -x_i). m = 3 uses conductor 2 and
/// shift 1; m = 4 has conductor 1 and is rejected.
inline ShiftedForm form_to_shifted(const MGonalForm& f) {
    if (f.m == 4) throw precondition_error("form_to_shifted: m = 4 has conductor 1; use brute force");
    const auto k = constants(f.m);
    const std::int64_t alpha = f.m == 3 ? 1 : k.d;
    return ShiftedForm(k.c, f.coeffs, std::vector<std::int64_t>(f.rank(), alpha));
}

}  // namespace polyreg
