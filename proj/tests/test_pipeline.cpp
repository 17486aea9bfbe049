#include "oracles.hpp"
#include "polyreg/pipeline.hpp"

#include <gtest/gtest.h>

using namespace polyreg;

namespace {
// Independent check of the four clauses with the Hensel oracle.
bool clauses_by_oracle(std::int64_t p, std::int64_t u, std::array<std::int64_t, 3> a, std::array<std::int64_t, 3> al,
                       std::int64_t v) {
    const std::int64_t X = u * v + a[0] * al[0] * al[0] + a[1] * al[1] * al[1];
    const std::int64_t Y = X + a[2] * al[2] * al[2];
    // ord_p <= 1 on both values, so p^3 already decides them
    const auto bx = oracle::represents({a[0], a[1]}, X, p, 3);
    const auto by = oracle::represents({a[0], a[1], a[2]}, Y, p, 3);
    return 0 < v && v < p * p && bx && by && !*bx && *by &&
           oracle::val(X, p, 9) <= 1 && oracle::val(Y, p, 9) <= 1;
}
}  // namespace

TEST(FindNu, Examples) {
    const auto a = find_nu(DiagonalLattice{1, 1, 1}, 1, 0, false);
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(*a, 1);  // nu = 0 fails: 4n hits 28 = 4 * 7
    const auto b = find_nu(DiagonalLattice{1, 1, 2}, 1, 1, false);
    ASSERT_TRUE(b.has_value());
    EXPECT_LE(*b, 2);
    const auto c = find_nu(DiagonalLattice{1, 1, 1}, 5, 0, true);
    ASSERT_TRUE(c.has_value());
    EXPECT_LE(*c, 4);
    EXPECT_THROW(find_nu(DiagonalLattice{1, 1, 1}, 2, 0, false), precondition_error);
}

// Every term of the chosen progression is represented (checked by the oracle).
TEST(FindNu, ProgressionRepresented) {
    for (std::int64_t a = 1; a <= 8; ++a)
        for (std::int64_t b = a; b <= 8; ++b)
            for (std::int64_t c = b; c <= 12; ++c) {
                const DiagonalLattice L{a, b, c};
                if (!is_2_stable(L)) continue;
                for (std::int64_t u : {1, 3, 5})
                    for (std::int64_t l : {0, 1, 2}) {
                        const auto nu = find_nu(L, u, l, false);
                        ASSERT_TRUE(nu.has_value()) << a << b << c << " u=" << u << " l=" << l;
                        for (std::int64_t n = 0; n < 64; ++n) {
                            EXPECT_TRUE(*oracle::represents(L.entries, u * (4 * n + *nu) + l, 2))
                                << a << b << c << " u=" << u << " l=" << l << " n=" << n;
                        }
                    }
            }
}

TEST(FindV, Examples) {
    const auto r = find_v(5, 1, {1, 2, 5}, {1, 1, 1});
    EXPECT_EQ(r.branch, 2);
    EXPECT_TRUE(find_v_clauses_hold(5, 1, {1, 2, 5}, {1, 1, 1}, r.v));
    const auto s = find_v(5, 2, {1, 2, 10}, {1, 1, 1});
    EXPECT_EQ(s.branch, 2);
    EXPECT_TRUE(find_v_clauses_hold(5, 2, {1, 2, 10}, {1, 1, 1}, s.v));
    // <1,3,7> is isotropic at 7 (-3 is a square mod 7), so use <1,1,7>.
    EXPECT_THROW(find_v(7, 1, {1, 3, 7}, {1, 1, 2}), precondition_error);
    const auto t = find_v(7, 1, {1, 1, 7}, {1, 1, 2});
    EXPECT_TRUE(find_v_clauses_hold(7, 1, {1, 1, 7}, {1, 1, 2}, t.v));
}

TEST(FindV, AllBranchesSatisfyClauses) {
    int branches[4] = {0, 0, 0, 0};
    for (std::int64_t p : {5, 7, 11})
        for (std::int64_t a1 = 1; a1 <= 12; ++a1)
            for (std::int64_t a2 = 1; a2 <= 12; ++a2)
                for (std::int64_t a3 : {std::int64_t{1}, std::int64_t{2}, std::int64_t{3}, p, 2 * p, 3 * p}) {
                    const std::array<std::int64_t, 3> a{a1, a2, a3};
                    if (odd_stable_kind(DiagonalLattice{a1, a2, a3}, p) != OddStableKind::anisotropic) continue;
                    for (std::int64_t u : {1, 2, 3})
                        for (const std::array<std::int64_t, 3>& al :
                             {std::array<std::int64_t, 3>{1, 1, 1}, {1, 2, p}, {2, 1, 3}}) {
                            const auto r = find_v(p, u, a, al);
                            ++branches[r.branch];
                            EXPECT_TRUE(find_v_clauses_hold(p, u, a, al, r.v));
                            EXPECT_TRUE(clauses_by_oracle(p, u, a, al, r.v)) << p << " " << a1 << a2 << a3 << " v=" << r.v;
                        }
                }
    EXPECT_GT(branches[1], 0);
    EXPECT_GT(branches[2], 0);
    EXPECT_GT(branches[3], 0);
}

TEST(CoprimeShift, Examples) {
    EXPECT_EQ(find_coprime_shift({5, 7}, 1, 0).n, 1);
    EXPECT_EQ(find_coprime_shift({5, 7}, 1, 0).bound, 6);
    const auto b = find_coprime_shift({5, 7, 11}, 2, 5);
    EXPECT_EQ(b.n, 2);
    EXPECT_EQ(b.bound, 14);
    const auto c = find_coprime_shift({5, 7, 11, 13}, 1, 0);
    EXPECT_EQ(c.n, 1);
    EXPECT_EQ(c.bound, 32);
    const auto d = find_coprime_shift({11}, 1, 0);
    EXPECT_TRUE(d.fallback);
    EXPECT_EQ(d.n, 1);
    EXPECT_THROW(find_coprime_shift({7, 5}, 1, 0), precondition_error);
    EXPECT_THROW(find_coprime_shift({5, 7}, 5, 0), precondition_error);
}
