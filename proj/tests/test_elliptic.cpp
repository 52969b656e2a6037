#include "lgf/descent.hpp"
#include "lgf/search.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lgf;

namespace {

const WeierstrassCurve kE1(0, -1);  // y² = x³ − x
const WeierstrassCurve kE4(0, -4);  // y² = x³ − 4x
const WeierstrassCurve kRank1(0, -2); // y² = x³ − 2x, (2, 2) has infinite order

CurvePoint pt(long x, long y) { return CurvePoint::affine(x, y); }

// integral x with |x| ≤ 100 and rational x = p/d² with |p| ≤ 100, d ≤ 10
std::set<CurvePoint> exhaustive_points(const WeierstrassCurve &E)
{
    std::set<CurvePoint> out{CurvePoint::infinity()};
    for (long d = 1; d <= 10; ++d)
        for (long p = -100 * d * d; p <= 100 * d * d; ++p) {
            Rational x(p, d * d);
            x.canonicalize();
            if (x.get_den() != d * d)
                continue;
            Rational v = E.rhs(x);
            if (is_rational_square(v)) {
                out.insert(CurvePoint::affine(x, rational_sqrt(v)));
                out.insert(CurvePoint::affine(x, -rational_sqrt(v)));
            }
        }
    return out;
}

} // namespace

TEST(Curve, RejectsSingular)
{
    EXPECT_THROW(WeierstrassCurve(0, 0), ArithmeticError);
    EXPECT_THROW(WeierstrassCurve(2, 1), ArithmeticError);
    EXPECT_NO_THROW(WeierstrassCurve(1, -2));
}

TEST(GroupLaw, Examples)
{
    EXPECT_EQ(add_points(kE1, pt(0, 0), pt(1, 0)), pt(-1, 0));
    const CurvePoint P = pt(2, 2);
    EXPECT_EQ(add_points(kRank1, P, CurvePoint::infinity()), P);
    EXPECT_EQ(add_points(kRank1, P, negate(P)), CurvePoint::infinity());
    EXPECT_THROW(add_points(kE1, pt(1, 1), pt(0, 0)), ArithmeticError);
}

TEST(GroupLaw, AssociativeOnRandomTriples)
{
    const CurvePoint G = pt(2, 2);
    std::vector<CurvePoint> pool;
    for (long k = -6; k <= 6; ++k) {
        CurvePoint M = multiply(kRank1, k, G);
        pool.push_back(M);
        pool.push_back(add_points(kRank1, M, pt(0, 0)));
    }
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        const auto &A = pool[rng() % pool.size()], &B = pool[rng() % pool.size()], &C = pool[rng() % pool.size()];
        ASSERT_EQ(add_points(kRank1, add_points(kRank1, A, B), C), add_points(kRank1, A, add_points(kRank1, B, C)));
        ASSERT_EQ(add_points(kRank1, A, B), add_points(kRank1, B, A));
    }
}

TEST(Torsion, NagellLutzExamples)
{
    auto t1 = nagell_lutz_torsion(kE1);
    EXPECT_EQ(std::set<CurvePoint>(t1.begin(), t1.end()),
              (std::set<CurvePoint>{CurvePoint::infinity(), pt(0, 0), pt(1, 0), pt(-1, 0)}));
    auto t4 = nagell_lutz_torsion(kE4);
    EXPECT_EQ(std::set<CurvePoint>(t4.begin(), t4.end()),
              (std::set<CurvePoint>{CurvePoint::infinity(), pt(0, 0), pt(2, 0), pt(-2, 0)}));
    // y² = x³ + 4x has Z/4: (2, ±4)
    auto t = nagell_lutz_torsion(WeierstrassCurve(0, 4));
    EXPECT_EQ(t.size(), 4u);
    EXPECT_TRUE(std::count(t.begin(), t.end(), pt(2, 4)));
}

TEST(Torsion, ClosedUnderGroupLaw)
{
    for (const auto &E : {kE1, kE4, WeierstrassCurve(0, 4), WeierstrassCurve(-1, 0 + 2)}) {
        auto T = nagell_lutz_torsion(E);
        std::set<CurvePoint> S(T.begin(), T.end());
        for (const auto &A : T) {
            EXPECT_TRUE(S.count(negate(A)));
            for (const auto &B : T)
                EXPECT_TRUE(S.count(add_points(E, A, B)));
        }
    }
}

TEST(Torsion, ExhaustiveSearchFindsNothingElse)
{
    for (const auto &E : {kE1, kE4}) {
        auto T = nagell_lutz_torsion(E);
        EXPECT_EQ(exhaustive_points(E), std::set<CurvePoint>(T.begin(), T.end()));
    }
}

TEST(Descent, SeedCurvesHaveRankZero)
{
    auto c1 = selmer_rank_bound(kE1);
    EXPECT_EQ(c1.rank_upper_bound, 0);
    EXPECT_EQ(c1.torsion_points.size(), 4u);
    auto c4 = selmer_rank_bound(kE4);
    EXPECT_EQ(c4.rank_upper_bound, 0);
    EXPECT_EQ(c4.torsion_points.size(), 4u);
    EXPECT_TRUE(c1.certifies_rank_zero());
}

TEST(Descent, RankPositiveCurvesAreNotCertified)
{
    EXPECT_EQ(selmer_rank_bound(WeierstrassCurve(0, -25)).rank_upper_bound, 1); // congruent number 5
    EXPECT_EQ(selmer_rank_bound(kRank1).rank_upper_bound, 1);
    EXPECT_FALSE(selmer_rank_bound(kRank1).certifies_rank_zero());
}

TEST(Descent, NegativeTwistWithPositiveCoefficientsFailsAtInfinity)
{
    // −w² = u⁴ + 4v⁴ (d = −1 on the isogenous curve of x³ − x)
    EXPECT_FALSE(locally_soluble(torsor_quartic(0, 4, -1), Place::infinity()));
    EXPECT_TRUE(locally_soluble(torsor_quartic(0, 4, 1), Place::infinity()));
}

TEST(Descent, TorsorTestsAgreeWithBruteForce)
{
    for (const auto &E : {kE1, kE4, WeierstrassCurve(0, -25), kRank1, WeierstrassCurve(1, -2)}) {
        const Integer a = E.a.get_num(), b = E.b.get_num();
        const std::array<std::pair<Integer, Integer>, 2> sides{std::make_pair(a, b),
                                                               std::make_pair(Integer(-2 * a), Integer(a * a - 4 * b))};
        for (const auto &[A, B] : sides)
            for (const auto &d : squarefree_divisors(B)) {
                const BinaryQuartic g = torsor_quartic(A, B, d);
                EXPECT_EQ(locally_soluble(g, Place::infinity()), oracle::sampled_real_soluble(g));
                for (const auto &v : descent_places(E)) {
                    if (v.is_infinite())
                        continue;
                    auto expect = oracle::brute_force_qp_soluble(g, v.prime());
                    ASSERT_TRUE(expect.has_value()) << "oracle undecided at " << v.prime();
                    EXPECT_EQ(locally_soluble(g, v), *expect)
                        << "A=" << A << " B=" << B << " d=" << d << " p=" << v.prime();
                }
            }
    }
}

TEST(Descent, SelmerRecordsAreConsistent)
{
    auto c = selmer_rank_bound(kE1);
    int soluble[2] = {0, 0};
    for (const auto &t : c.selmer_local_data)
        soluble[t.side] += t.everywhere_soluble();
    EXPECT_EQ(soluble[0], 1 << c.selmer_dimension[0]);
    EXPECT_EQ(soluble[1], 1 << c.selmer_dimension[1]);
}

TEST(ClosedPoint, Examples)
{
    auto P = find_closed_point(kE1);
    EXPECT_EQ(P.x0, 2);
    EXPECT_EQ(P.fiber, 6);
    auto Q = find_closed_point(kE1, {Rational(2)});
    EXPECT_EQ(Q.x0, 3);
    EXPECT_EQ(Q.fiber, 24);
    // x³ − 4x: x0 = 2 has fiber 0 and is skipped
    EXPECT_EQ(find_closed_point(kE4).x0, 3);
}

TEST(Search, BaseSearchMatchesTorsion)
{
    EXPECT_EQ(base_point_search(kE1, 100).size(), 4u);
    EXPECT_EQ(base_point_search(kE4, 100).size(), 4u);
    // y² = x³ − 2x has (2, ±2), (0, 0), (9/4, ±21/8), ...
    auto pts = base_point_search(kRank1, 100);
    EXPECT_TRUE(std::count(pts.begin(), pts.end(), CurvePoint::affine(Rational(9, 4), Rational(21, 8))));
}

TEST(Search, SlowSearchAgreesWithSievedSearch)
{
    // the sieved fast path against a plain exact scan
    for (const auto &E : {kRank1, WeierstrassCurve(1, -2), WeierstrassCurve(-3, 2 + 0)}) {
        std::set<CurvePoint> plain{CurvePoint::infinity()};
        for (long d = 1; d * d <= 400; ++d)
            for (long p = -400; p <= 400; ++p) {
                if (std::gcd(p, d) != 1)
                    continue;
                Rational x(p, d * d);
                Rational v = E.rhs(x);
                if (is_rational_square(v)) {
                    plain.insert(CurvePoint::affine(x, rational_sqrt(v)));
                    plain.insert(CurvePoint::affine(x, -rational_sqrt(v)));
                }
            }
        auto fast = base_point_search(E, 400);
        EXPECT_EQ(std::set<CurvePoint>(fast.begin(), fast.end()), plain);
    }
}

TEST(SlowSearch, RankZeroSeedsHaveNoPointsBeyondTorsionUpToHeightMillion)
{
    for (const auto &E : {kE1, kE4}) {
        auto T = nagell_lutz_torsion(E);
        auto found = base_point_search(E, 1000000);
        EXPECT_EQ(std::set<CurvePoint>(found.begin(), found.end()), std::set<CurvePoint>(T.begin(), T.end()));
    }
}
