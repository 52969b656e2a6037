#include "lgf/squareclasses.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lgf;

namespace {

Place P(std::uint64_t p) { return Place::finite(p); }

// squareness via the enumeration oracle (sign at ∞)
bool oracle_square(const Rational &q, const Place &v)
{
    if (v.is_infinite())
        return q > 0;
    return oracle::brute_force_square_oracle(q, v.prime(), v.prime() == 2 ? 5 : 2);
}

// S by scanning every place up to a bound with the oracle
PlaceSet oracle_S(const Rational &a, const Rational &b, std::uint64_t bound)
{
    std::vector<Place> out;
    std::vector<Place> places{Place::infinity()};
    for (auto p : primes_up_to(bound))
        places.push_back(P(p));
    for (const auto &v : places)
        if (!oracle_square(a, v) && !oracle_square(b, v) && !oracle_square(a * b, v))
            out.push_back(v);
    return PlaceSet(out);
}

std::vector<std::pair<Rational, Rational>> random_classes(int count, unsigned seed)
{
    std::mt19937_64 rng(seed);
    const std::vector<long> gens{-1, 2, 3, 5, 7, 11, 13};
    std::vector<std::pair<Rational, Rational>> out;
    while (static_cast<int>(out.size()) < count) {
        Rational a = 1, b = 1;
        for (long g : gens) {
            if (rng() % 3 == 0)
                a *= g;
            if (rng() % 3 == 0)
                b *= g;
        }
        if (classes_independent(a, b))
            out.emplace_back(a, b);
    }
    return out;
}

} // namespace

TEST(Classes, DefaultAndIndependence)
{
    auto [a, b] = independent_classes();
    EXPECT_EQ(a, 3);
    EXPECT_EQ(b, 5);
    EXPECT_TRUE(classes_independent(3, 5));
    EXPECT_FALSE(classes_independent(2, 8));
    EXPECT_TRUE(classes_independent(-1, 2));
    EXPECT_FALSE(classes_independent(4, 3));
    EXPECT_FALSE(classes_independent(Rational(3, 4), 12));
}

TEST(ComputeS, Examples)
{
    EXPECT_EQ(compute_S(3, 5), (PlaceSet{P(2), P(3), P(5)}));
    EXPECT_EQ(compute_S(-1, 2), (PlaceSet{P(2)}));
    EXPECT_THROW(compute_S(4, 7), ArithmeticError);
}

TEST(ComputeS, MatchesPerPlaceOracle)
{
    EXPECT_EQ(compute_S(3, 5), oracle_S(3, 5, 1000));
    EXPECT_EQ(compute_S(-1, 2), oracle_S(-1, 2, 1000));
    for (auto [a, b] : random_classes(20, 3))
        EXPECT_EQ(compute_S(a, b), oracle_S(a, b, 400)) << to_string(a) << ", " << to_string(b);
}

TEST(ComputeS, IndependentOfRepresentative)
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> d(-40, 40);
    for (auto [a, b] : random_classes(20, 9)) {
        Rational t(d(rng)), s(d(rng), 1 + (rng() % 30));
        if (t == 0 || s == 0)
            continue;
        EXPECT_EQ(compute_S(a * t * t, b * s * s), compute_S(a, b));
    }
}

TEST(Assemble, Examples)
{
    auto d = assemble(3, 5);
    EXPECT_EQ(d.S, (PlaceSet{P(2), P(3), P(5)}));
    EXPECT_EQ(d.w, P(7));
    EXPECT_EQ(d.c, 721);
    auto e = assemble(-1, 2);
    EXPECT_EQ(e.S, (PlaceSet{P(2)}));
    EXPECT_EQ(e.w, P(3));
    EXPECT_EQ(e.c, 33);
    EXPECT_TRUE(square_data_violations(d).empty());
    EXPECT_TRUE(square_data_violations(e).empty());
    EXPECT_THROW(assemble(2, 8), ArithmeticError);
}

TEST(Assemble, ViolationsAreDetected)
{
    auto d = assemble(3, 5);
    auto bad = d;
    bad.S.erase(P(3));
    EXPECT_FALSE(square_data_violations(bad).empty());
    bad = d;
    bad.c = 721 * 7;
    EXPECT_FALSE(square_data_violations(bad).empty());
    bad = d;
    bad.w = P(5);
    EXPECT_FALSE(square_data_violations(bad).empty());
}

TEST(Coverage, EveryCheckedPlaceHasALocalSquare)
{
    auto choices = random_classes(20, 21);
    choices.insert(choices.begin(), {Rational(3), Rational(5)});
    std::vector<Place> places{Place::infinity()};
    for (auto p : primes_up_to(1000))
        places.push_back(P(p));
    for (auto [a, b] : choices) {
        auto d = assemble(a, b);
        for (const auto &v : d.S)
            EXPECT_TRUE(covered_at(d, v));
        for (const auto &v : places)
            ASSERT_TRUE(covered_at(d, v)) << to_string(a) << ", " << to_string(b) << " at " << to_string(v);
    }
}

TEST(Coverage, CIsNeverAGlobalSquare)
{
    auto choices = random_classes(20, 33);
    choices.insert(choices.begin(), {Rational(3), Rational(5)});
    for (auto [a, b] : choices) {
        auto d = assemble(a, b);
        auto f = factor(d.c.get_num());
        ASSERT_TRUE(f.count(d.w.prime()));
        EXPECT_EQ(f.at(d.w.prime()) % 2, 1u);
        EXPECT_FALSE(is_rational_square(d.c));
    }
}
