#include "ultra/generators.hpp"
#include "ultra/preserving.hpp"
#include "ultra/similarity.hpp"

#include "doctest.h"
#include "support.hpp"

using namespace ultra;
using test::R;

TEST_SUITE_BEGIN("preserving");

namespace {

PiecewiseMonotone zero_then_shift()
{
    return PiecewiseMonotone({Piece{Interval::closed(0, 1), AffineForm{0, 0}},
                              Piece{Interval::ray(1, false), AffineForm{1, -1}}});
}

PiecewiseMonotone downward_junction()
{
    return PiecewiseMonotone({Piece{Interval(R("0"), R("2"), true, false), AffineForm{1, 0}},
                              Piece{Interval::ray(R("2"), true), AffineForm{1, -1}}});
}

} // namespace

TEST_CASE("bounded and unbounded transforms")
{
    auto s = test::triangle("1", "2");
    auto b = bounded_transform(s, 2);
    CHECK(b.distance(0, 1) == 1);
    CHECK(b.distance(0, 2) == R("4/3"));
    CHECK(b.is_ultrametric());
    CHECK(diameter(b) < 2);
    CHECK(unbounded_transform(b, 2).matrix() == s.matrix());

    CHECK_THROWS_AS(unbounded_transform(test::triangle("1", "3"), 2), input_error);
    CHECK_THROWS_AS(unbounded_transform(test::triangle("1", "2"), 2), input_error);
    CHECK_THROWS_AS(bounded_transform(s, 0), input_error);
    CHECK_THROWS_AS(unbounded_function(2, 2), input_error);

    CHECK(classify_preserving(bounded_function(R("5/2"))).strictly_increasing);
    CHECK(classify_preserving(unbounded_function(2, R("3/2"))).tag == PreservingTag::UltrametricPreserving);
}

TEST_CASE("round trips on random spaces")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto s = random_space(1 + seed % 7, seed, {R("1/2"), 1, 3, 7, 20});
        for (const Rational d_star : {R("1/3"), R("5"), R("100")}) {
            auto b = bounded_transform(s, d_star);
            CHECK(b.is_ultrametric());
            for (std::size_t i = 0; i < b.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j)
                    CHECK(b.distance(i, j) < d_star);
            CHECK(unbounded_transform(b, d_star).matrix() == s.matrix());
        }
    }
}

TEST_CASE("falsifier")
{
    SUBCASE("nothing to find for a preserving function")
    {
        CHECK_FALSE(empirical_falsify(PiecewiseMonotone::single(MoebiusForm{2}), 200, 1));
        CHECK_FALSE(empirical_falsify(bounded_function(3), 200, 2, 4));
    }
    SUBCASE("zero on a positive interval")
    {
        // the pseudo claim holds, so there is nothing to refute
        CHECK_FALSE(empirical_falsify(zero_then_shift(), 200, 3));
    }
    SUBCASE("downward junction")
    {
        auto c = empirical_falsify(downward_junction(), 200, 4);
        REQUIRE(c);
        CHECK(c->report.verdict == Verdict::NotPseudoultrametric);
        CHECK(c->space.is_ultrametric());
        auto f = downward_junction();
        for (std::size_t i = 0; i < c->space.size(); ++i)
            for (std::size_t j = 0; j < c->space.size(); ++j)
                CHECK(c->composed[i][j] == f(c->space.distance(i, j)));
        CHECK(validate(c->composed).verdict == Verdict::NotPseudoultrametric);
    }
    SUBCASE("nonzero at the origin")
    {
        auto c = empirical_falsify(PiecewiseMonotone::single(AffineForm{1, 1}), 10, 5);
        REQUIRE(c);
        CHECK(c->report.axiom == ValidationReport::Axiom::ZeroDiagonal);
    }
    SUBCASE("targeted fallback")
    {
        // a dip too narrow for random levels to hit
        PiecewiseMonotone f({Piece{Interval(R("0"), R("1000001/1000000"), true, false), AffineForm{1, 0}},
                             Piece{Interval::ray(R("1000001/1000000"), true), AffineForm{1, R("-1/1000")}}});
        auto c = empirical_falsify(f, 1, 6);
        REQUIRE(c);
        CHECK(c->targeted);
        CHECK(c->report.verdict == Verdict::NotPseudoultrametric);
    }
    SUBCASE("thread count does not change the answer")
    {
        auto one = empirical_falsify(downward_junction(), 300, 8, 1);
        auto many = empirical_falsify(downward_junction(), 300, 8, 4);
        REQUIRE(one);
        REQUIRE(many);
        CHECK(one->trial == many->trial);
        CHECK(one->composed == many->composed);
    }
}

TEST_CASE("collapsing a distance breaks weak similarity")
{
    auto s = p532_counterexample(1, 2);
    auto composed = compose_metric(s, zero_then_shift());
    CHECK(distance_set(s).values.size() == 3);
    CHECK(distance_set(composed).values.size() == 2);
    CHECK_FALSE(composed.is_ultrametric());
    CHECK(find_weak_similarities(s, composed).empty());

    CHECK_THROWS_AS(p532_counterexample(2, 1), input_error);
    CHECK_THROWS_AS(p532_counterexample(0, 1), input_error);
    CHECK_THROWS_AS(p532_counterexample(1, 1), input_error);
}

TEST_CASE("strictly increasing preserving functions give weak similarities")
{
    auto f = PiecewiseMonotone::single(MoebiusForm{3});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto s = random_space(2 + seed % 5, seed, {1, 2, 5, 9});
        auto image = compose_metric(s, f);
        auto r = check_weak_similarity(s, image, Bijection::identity(s.labels()));
        REQUIRE(r.ok());
        // ψ runs from D(f∘d) back to D(d)
        for (const auto& [t, v] : r.scaling->pairs)
            CHECK(f(v) == t);
    }
}

TEST_SUITE_END();
