#include "oracles.hpp"
#include "polyreg/density.hpp"

#include <gtest/gtest.h>

using namespace polyreg;

TEST(Psi, PrimePowerExamples) {
    EXPECT_EQ(psi_prime_power(5, 1), 1);
    EXPECT_EQ(psi_prime_power(5, 2), 3);
    EXPECT_EQ(psi_prime_power(7, 2), 4);
    EXPECT_THROW(psi_prime_power(3, 1), precondition_error);
    EXPECT_THROW(psi_prime_power(5, 0), precondition_error);
}

TEST(Psi, Examples) {
    EXPECT_EQ(psi(5, 48), 8);
    EXPECT_EQ(psi(29, 48), 2);
    EXPECT_EQ(psi(53, 48), 1);
    const std::vector<std::int64_t> want{8, 7, 5, 4, 3, 3, 3, 2};
    std::vector<std::int64_t> got;
    for (auto p : PrimeSeq::global().up_to(29)) got.push_back(psi_int(p, 48));
    EXPECT_EQ(got, want);
}

TEST(Psi, MatchesDigitOracleAndCeilingBound) {
    for (std::int64_t p = 5; p <= 97; ++p) {
        if (!is_prime(p)) continue;
        for (std::int64_t n = 1; n <= 500; ++n) {
            const auto o = oracle::psi(p, n);
            const Rational v = psi(p, n);
            EXPECT_EQ(v, Rational(o.num, o.den)) << p << " " << n;
            EXPECT_GE(v, 1);
            EXPECT_LE(v, (n + p - 1) / p) << p << " " << n;
        }
    }
}

TEST(Eta, TableOne) {
    const std::vector<std::array<std::int64_t, 3>> t{{49, 15, 5}, {50, 15, 7}, {25, 6, 9},  {19, 6, 5},   {20, 4, 9},  {49, 17, 3},
                                                     {102, 17, 17}, {17, 8, 2}, {48, 8, 13}, {30, 7, 9},  {74, 17, 7}, {28, 8, 7},
                                                     {25, 7, 7},  {50, 19, 3}, {125, 19, 25}, {60, 9, 19}};
    for (const auto& [n, s, e] : t) {
        EXPECT_EQ(eta(n, static_cast<int>(s)), e) << n << "," << s;
        if (s <= 9) {  // subset enumeration grows like C(pi(n) + s, s)
            EXPECT_EQ(oracle::eta_literal(n, static_cast<int>(s)), e) << n << "," << s;
        }
    }
}

TEST(Eta, LargestValuesEqualSubsetMinimum) {
    for (std::int64_t n = 1; n <= 60; ++n)
        for (int s = 1; s <= 6; ++s) EXPECT_EQ(eta(n, s), oracle::eta_literal(n, s)) << n << "," << s;
}

TEST(Eta, MonotoneBoundedCutoffFree) {
    for (std::int64_t n = 1; n <= 200; ++n)
        for (int s = 1; s <= 25; ++s) {
            EXPECT_GE(eta(n, s), eta(n, s + 1));
            EXPECT_LE(eta(n, s), n - s);
            EXPECT_EQ(eta(n, s), eta(n, s, 3 * n + 100));
        }
    EXPECT_THROW(eta(0, 1), precondition_error);
}

TEST(ExceptionCount, Examples) {
    const auto a = exception_count_check(5, 1, DiagonalLattice{1, 1, 1}, 1, 0);
    EXPECT_TRUE(a.pass);
    EXPECT_LE(a.count, 1);
    EXPECT_EQ(a.bound, 1);
    const auto b = exception_count_check(5, 2, DiagonalLattice{1, 2, 5}, 1, 0);
    EXPECT_TRUE(b.pass);
    EXPECT_EQ(b.bound, 3);
    EXPECT_TRUE(exception_count_check(7, 1, DiagonalLattice{1, 1, 1}, 3, 2).pass);
    EXPECT_THROW(exception_count_check(5, 1, DiagonalLattice{1, 5, 5}, 1, 0), precondition_error);
    EXPECT_THROW(exception_count_check(5, 1, DiagonalLattice{1, 1, 1}, 5, 0), precondition_error);
}

// Recount with the oracle instead of the library's local engine.
TEST(ExceptionCount, CountMatchesOracle) {
    for (std::int64_t p : {5, 7})
        for (std::int64_t a = 1; a <= 6; ++a)
            for (std::int64_t c : {p, 2 * p, 3 * p}) {
                const DiagonalLattice L{1, a, c};
                if (!is_p_stable(L, p)) continue;
                for (std::int64_t u : {1, 2, 3})
                    for (std::int64_t v : {0, 1, 2}) {
                        const auto r = exception_count_check(p, 2, L, u, v);
                        std::int64_t cnt = 0;
                        for (std::int64_t n = 1; n <= p * p; ++n) cnt += !*oracle::represents(L.entries, u * n + v, p);
                        EXPECT_EQ(r.count, cnt);
                        EXPECT_TRUE(r.pass);
                    }
            }
}
