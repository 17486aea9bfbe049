#pragma once
// Mechanical replay of the four-case bound derivation. Each case is a short
// script of lemma applications; every bound is recomputed from eta values,
// the lemma formulas and the product inequalities, never copied in.

#include "polyreg/density.hpp"
#include "polyreg/prodineq.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace polyreg {

/// Case parameters. Residues of m: Case 1 m !=0 (4), m = 2 (3); Case 2
/// m != 0 (4), m != 2 (3); Case 3 m = 0 (4), m = 2 (3); Case 4 m = 0 (4), m != 2 (3).
struct CaseParams {
    int id = 0;
    std::vector<int> deltas;  // delta values occurring in the case
    int kappa = 1;
    int nu_max = 0;           // common maximum of nu_1 and nu_2
    std::string congruence;

    int delta_max() const { return *std::max_element(deltas.begin(), deltas.end()); }
};

inline CaseParams case_params(int id) {
    switch (id) {
        case 1: return {1, {2, 4}, 1, 0, "m != 0 mod 4, m = 2 mod 3"};
        case 2: return {2, {2, 4}, 3, 1, "m != 0 mod 4, m != 2 mod 3"};
        case 3: return {3, {1}, 4, 2, "m = 0 mod 4, m = 2 mod 3"};
        case 4: return {4, {1}, 12, 4, "m = 0 mod 4, m != 2 mod 3"};
        default: throw precondition_error("case id must be in 1..4");
    }
}

/// S(t) = kappa (W(t) - 1) + nu_max + 1, the bound on (k - v)/p_1^2.
inline RhsShape k_shape(const CaseParams& cp) { return {cp.kappa, cp.kappa - cp.nu_max - 1}; }

/// k <= p_1^2 S(t).
inline BigInt k_bound(const CaseParams& cp, int t, std::int64_t p1) {
    if (t < 3) throw precondition_error("k_bound: t must be >= 3");
    return BigInt(p1) * p1 * shape_value(k_shape(cp), t);
}

/// Lemma (i): two representations among the first n+1 progression terms give a_1 <= kappa n + nu.
inline std::int64_t bound_a1_two_reps(std::int64_t n, std::int64_t kappa, std::int64_t nu) { return kappa * n + nu; }

/// Window length n for lemma (i) from eta(n_eta, s) = e: at least e hits
/// among 0..n_eta-1, so at least two among 0..n_eta-e+1.
inline std::int64_t two_rep_window(std::int64_t n_eta, std::int64_t e) { return n_eta - e + 1; }

struct LemmaBound {
    std::int64_t value = 0;
    std::int64_t eta = 0;
};

/// Lemma (ii): eta(n,s) > 8N^3 gives a_1 (N^2 c + 2N) <= delta (kappa (n-1) + nu);
/// returned at c = c_min.
inline LemmaBound bound_a1_from_eta(std::int64_t n, int s, std::int64_t N, std::int64_t delta, std::int64_t kappa,
                                    std::int64_t nu, std::int64_t c_min) {
    LemmaBound r;
    r.eta = eta(n, s);
    if (r.eta <= 8 * N * N * N)
        throw precondition_error("bound_a1_from_eta: eta(" + std::to_string(n) + "," + std::to_string(s) +
                                 ") = " + std::to_string(r.eta) + " is not > 8N^3");
    r.value = delta * (kappa * (n - 1) + nu) / (N * N * c_min + 2 * N);
    return r;
}

/// Lemma (iii): eta(n,s) > 2N and N^2 c + 2N > delta (kappa (n-1) + nu) give
/// a_2 <= kappa (n-1) + nu. window overrides n in the bound and the
/// c-condition (used when only a sub-window carries 2N+1 hits).
inline LemmaBound bound_a2_from_eta(std::int64_t n, int s, std::int64_t N, std::int64_t delta, std::int64_t kappa,
                                    std::int64_t nu, std::int64_t c_min, std::int64_t window = 0) {
    LemmaBound r;
    r.eta = eta(n, s);
    if (r.eta <= 2 * N)
        throw precondition_error("bound_a2_from_eta: eta(" + std::to_string(n) + "," + std::to_string(s) +
                                 ") = " + std::to_string(r.eta) + " is not > 2N");
    const std::int64_t w = window ? window : n;
    if (!(N * N * c_min + 2 * N > delta * (kappa * (w - 1) + nu)))
        throw precondition_error("bound_a2_from_eta: N^2 c + 2N > delta(kappa(n-1)+nu) fails at c = " +
                                 std::to_string(c_min));
    r.value = kappa * (w - 1) + nu;
    return r;
}

/// Window n' = n - e + 2N + 1 carrying 2N+1 hits when eta(n,s) = e.
inline std::int64_t trimmed_window(std::int64_t n, std::int64_t e, std::int64_t N) { return n - e + 2 * N + 1; }

/// Largest t at which lo-product <= A * S(t) (or S(t)^3 when cubed) can hold:
/// one less than the first t from which the strict inequality holds through
/// t_max and the induction ratio stays below r_{u+1}.
inline int t_bound_from_product(int lower, RhsShape shape, const BigInt& A, bool cubed, int t_max = 40) {
    auto rhs = [&](int t) {
        const BigInt b = shape_value(shape, t);
        return cubed ? BigInt(b * b * b) : BigInt(A * b);
    };
    int first = t_max + 1;
    for (int t = t_max; t >= std::max(lower, 3); --t) {
        if (prime_range_product(static_cast<std::size_t>(lower), static_cast<std::size_t>(t)) > rhs(t))
            first = t;
        else
            break;
    }
    if (first > t_max) throw std::logic_error("t_bound: inequality fails at t_max");
    for (int u = first; u < t_max; ++u)
        if (!(Rational(rhs(u + 1), rhs(u)) < Rational(nth_prime_ge5(static_cast<std::size_t>(u + 1)))))
            throw std::logic_error("t_bound: induction step fails");
    return first - 1;
}

/// Bound on t from a1 <= A1, a2 <= A2 using the named product inequality;
/// the clause constant must equal A1 A2.
inline int t_bound_step(const CaseParams& cp, std::int64_t a1_bound, std::int64_t a2_bound, int ineq_index) {
    const auto& spec = inequality_spec(ineq_index);
    const auto sh = k_shape(cp);
    if (spec.shape.kappa != sh.kappa || spec.shape.nu != sh.nu)
        throw precondition_error("t_bound_step: clause shape does not match the case");
    if (spec.cubed) throw precondition_error("t_bound_step: cubed clause belongs to the first step");
    if (spec.factor != a1_bound * a2_bound) throw precondition_error("t_bound_step: clause constant differs from a1*a2");
    return t_bound_from_product(spec.lower, sh, BigInt(a1_bound * a2_bound), false);
}

/// Case 4 contradiction at a candidate conductor c (nu_2 <= 4, kappa = 12):
/// 2c+2 > 12*59+4 pushes the second-shell values of a_1, a_2 beyond the first
/// 60 progression terms; eta(60,9) = 19 > 18 then bounds a_3(c + 2 alpha_3) by
/// 12*59+4, forcing a_1 = a_2 = a_3 = 1; nine hits among u <= 8 finally need
/// c + 2 alpha_j <= 12*8+4, impossible once c + 2 > 100.
inline bool case4_step3_check(std::int64_t c) {
    const std::int64_t limit60 = 12 * 59 + 4;
    if (!(2 * c + 2 > limit60)) return false;
    if (!(eta(60, 9) > 18)) return false;
    if (limit60 / (c + 2) > 1) return false;  // a_3 = 1 is not forced
    return c + 2 > 12 * 8 + 4;
}

/// c(m) = delta (m - 2)/2; largest m in the case's residue class for this delta.
inline std::int64_t m_bound_from_c(const CaseParams& cp, int delta, std::int64_t c_bound) {
    if (std::find(cp.deltas.begin(), cp.deltas.end(), delta) == cp.deltas.end())
        throw precondition_error("m_bound_from_c: delta does not occur in this case");
    auto in_class = [&](std::int64_t m) {
        const int want_delta = (m % 2 == 1) ? 4 : (m % 4 == 2 ? 2 : 1);
        if (want_delta != delta) return false;
        const bool two_mod3 = m % 3 == 2;
        return (cp.id == 1 || cp.id == 3) ? two_mod3 : !two_mod3;
    };
    std::int64_t m = 2 * c_bound / delta + 2;
    while (m >= 3 && !in_class(m)) --m;
    return m;
}

struct LogEntry {
    std::string step;
    std::string lemma;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::string output;  // name of the bounded quantity
    std::string value;
};

struct BoundState {
    int case_id = 0;
    std::optional<int> t_bound;
    std::optional<std::int64_t> a1_bound, a2_bound;
    std::map<int, std::int64_t> c_bound;  // delta -> bound
    std::map<int, std::int64_t> m_bound;  // delta -> bound
    std::vector<std::string> hypotheses;
    std::vector<LogEntry> log;
};

namespace detail {

// One t-reduction step of a case script.
struct ScriptStep {
    enum class A1 { two_reps, from_eta } a1_kind;
    std::int64_t a1_n;
    std::int64_t a2_n, a2_N;
    bool a2_trimmed;
    int clause;
};

struct CaseScript {
    int first_clause;
    std::vector<ScriptStep> steps;
    std::int64_t c_eta_n;  // lemma (ii) with N = 1 for the c bound; 0 for the bespoke case-4 step
};

inline CaseScript case_script(int id) {
    using A = ScriptStep::A1;
    switch (id) {
        case 1: return {1, {{A::two_reps, 49, 50, 3, false, 2}, {A::from_eta, 25, 19, 2, false, 3}}, 20};
        case 2:
            return {4,
                    {{A::two_reps, 49, 102, 8, false, 5},
                     {A::two_reps, 17, 48, 6, false, 6},
                     {A::from_eta, 30, 30, 4, false, 7}},
                    25};
        case 3:
            return {8,
                    {{A::two_reps, 49, 74, 3, false, 9},
                     {A::two_reps, 17, 28, 3, false, 10},
                     {A::from_eta, 30, 25, 2, true, 11}},
                    25};
        case 4: return {12, {{A::two_reps, 50, 125, 9, false, 13}}, 0};
        default: throw precondition_error("case id must be in 1..4");
    }
}

inline std::string str(std::int64_t v) { return std::to_string(v); }

}  // namespace detail

constexpr std::int64_t standing_c_min = 36;

inline BoundState replay_case(const CaseParams& cp) {
    const auto script = detail::case_script(cp.id);
    using detail::str;
    BoundState st;
    st.case_id = cp.id;
    st.hypotheses.push_back("c >= 36 (smaller conductors give m below every bound reported here)");
    const std::int64_t dmax = cp.delta_max();
    const std::int64_t kappa = cp.kappa, nu = cp.nu_max;

    // Step 1: a_3 <= k bounds the product of the t primes by p_1^6 S(t)^3.
    {
        const auto& spec = inequality_spec(script.first_clause);
        const int t = t_bound_from_product(spec.lower, k_shape(cp), BigInt(1), true);
        st.t_bound = t;
        st.log.push_back({"1", "k bound and product inequality",
                          {{"clause", spec.roman}, {"kappa", str(kappa)}, {"nu_max", str(nu)}}, "t", str(t)});
    }

    int step_no = 2;
    for (const auto& sc : script.steps) {
        const int s = *st.t_bound;
        const std::string step = std::to_string(step_no++);
        std::int64_t A1;
        if (sc.a1_kind == detail::ScriptStep::A1::two_reps) {
            const std::int64_t e = eta(sc.a1_n, s);
            if (e < 2) throw std::logic_error("replay: fewer than two representations");
            const std::int64_t x = two_rep_window(sc.a1_n, e);
            A1 = bound_a1_two_reps(x, kappa, nu);
            st.log.push_back({step, "lemma (i): two representations",
                              {{"eta_n", str(sc.a1_n)}, {"eta_s", str(s)}, {"eta", str(e)}, {"n", str(x)}}, "a1",
                              str(A1)});
        } else {
            const auto b = bound_a1_from_eta(sc.a1_n, s, 1, dmax, kappa, nu, standing_c_min);
            A1 = b.value;
            st.log.push_back({step, "lemma (ii)",
                              {{"eta_n", str(sc.a1_n)}, {"eta_s", str(s)}, {"eta", str(b.eta)}, {"N", "1"},
                               {"delta", str(dmax)}, {"c_min", str(standing_c_min)}},
                              "a1", str(A1)});
        }
        std::int64_t A2;
        {
            const std::int64_t e = eta(sc.a2_n, s);
            const std::int64_t w = sc.a2_trimmed ? trimmed_window(sc.a2_n, e, sc.a2_N) : 0;
            const auto b = bound_a2_from_eta(sc.a2_n, s, sc.a2_N, dmax, kappa, nu, standing_c_min, w);
            A2 = b.value;
            std::vector<std::pair<std::string, std::string>> in{{"eta_n", str(sc.a2_n)}, {"eta_s", str(s)},
                                                                 {"eta", str(b.eta)},    {"N", str(sc.a2_N)},
                                                                 {"delta", str(dmax)},   {"c_min", str(standing_c_min)}};
            if (w) in.emplace_back("window", str(w));
            st.log.push_back({step, sc.a2_trimmed ? "lemma (iii), trimmed window" : "lemma (iii)", in, "a2", str(A2)});
        }
        const int t = t_bound_step(cp, A1, A2, sc.clause);
        st.log.push_back({step, "product inequality",
                          {{"clause", inequality_spec(sc.clause).roman}, {"a1", str(A1)}, {"a2", str(A2)}}, "t",
                          str(t)});
        st.t_bound = t;
        st.a1_bound = A1;
        st.a2_bound = A2;
    }

    const std::string cstep = std::to_string(step_no);
    if (script.c_eta_n) {
        // Lemma (ii) with N = 1 and a_1 >= 1: c + 2 <= delta (kappa (n-1) + nu).
        const int s = *st.t_bound;
        const std::int64_t e = eta(script.c_eta_n, s);
        if (e <= 8) throw std::logic_error("replay: eta too small for the conductor bound");
        for (int delta : cp.deltas) {
            const std::int64_t cb = delta * (kappa * (script.c_eta_n - 1) + nu) - 2;
            st.c_bound[delta] = cb;
            st.log.push_back({cstep, "lemma (ii), N = 1",
                              {{"eta_n", str(script.c_eta_n)}, {"eta_s", str(s)}, {"eta", str(e)},
                               {"delta", str(delta)}},
                              "c", str(cb)});
        }
    } else {
        std::int64_t c = standing_c_min;
        while (!case4_step3_check(c)) ++c;
        for (std::int64_t x = c; x < c + 10000; ++x)
            if (!case4_step3_check(x)) throw std::logic_error("replay: case 4 contradiction is not monotone");
        for (int delta : cp.deltas) st.c_bound[delta] = c - 1;
        st.log.push_back({cstep, "case 4 conductor argument",
                          {{"eta_n", "60"}, {"eta_s", str(*st.t_bound)}, {"eta", str(eta(60, *st.t_bound))}}, "c",
                          str(c - 1)});
    }
    for (int delta : cp.deltas) {
        const std::int64_t mb = m_bound_from_c(cp, delta, st.c_bound[delta]);
        st.m_bound[delta] = mb;
        st.log.push_back({cstep, "conductor to m", {{"delta", str(delta)}, {"c", str(st.c_bound[delta])}}, "m",
                          str(mb)});
    }
    return st;
}

inline BoundState replay_case(int id) { return replay_case(case_params(id)); }

/// The six final bounds keyed by the residue description of m.
struct TheoremBound {
    std::string residue;
    std::int64_t m_max;
};

inline std::vector<TheoremBound> theorem_bounds() {
    std::vector<TheoremBound> out;
    auto c1 = replay_case(1), c2 = replay_case(2), c3 = replay_case(3), c4 = replay_case(4);
    out.push_back({"m = 1 mod 2, m = 2 mod 3", c1.m_bound.at(4)});
    out.push_back({"m = 1 mod 2, m != 2 mod 3", c2.m_bound.at(4)});
    out.push_back({"m = 2 mod 4, m = 2 mod 3", c1.m_bound.at(2)});
    out.push_back({"m = 2 mod 4, m != 2 mod 3", c2.m_bound.at(2)});
    out.push_back({"m = 0 mod 4, m = 2 mod 3", c3.m_bound.at(1)});
    out.push_back({"m = 0 mod 4, m != 2 mod 3", c4.m_bound.at(1)});
    return out;
}

}  // namespace polyreg
