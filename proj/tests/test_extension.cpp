#include "ultra/extension.hpp"
#include "ultra/generators.hpp"
#include "ultra/json_io.hpp"

#include "doctest.h"
#include "support.hpp"

#include <random>

using namespace ultra;
using test::R;
using F = SequenceFamily;

TEST_SUITE_BEGIN("extension");

namespace {

ImageForm inverse_power(const char* alpha, const char* beta, unsigned long k = 1)
{
    ImageForm f;
    f.alpha = R(alpha);
    f.beta = R(beta);
    f.exponent = k;
    return f;
}

SymbolicScaling root_scaling()
{
    return symbolic_scaling_from_json(read_json_file(test::data_file("root_scaling.json")));
}

SymbolicScaling square_scaling()
{
    return symbolic_scaling_from_json(read_json_file(test::data_file("square_scaling.json")));
}

Extension extension_of(const ExtensionResult& r)
{
    REQUIRE(std::holds_alternative<Extension>(r));
    return std::get<Extension>(r);
}

Blocked blocked_of(const ExtensionResult& r)
{
    REQUIRE(std::holds_alternative<Blocked>(r));
    return std::get<Blocked>(r);
}

// {0, 2, 5} ∪ {1/n} ∪ {2 + 1/n} with a random increasing ψ
SymbolicScaling random_two_sequence_scaling(std::mt19937_64& rng, bool allow_flat)
{
    auto pick = [&](int lo, int hi) { return Rational(static_cast<long>(lo + uniform_below(rng, hi - lo + 1)), 2); };
    DistanceSetDescriptor base({R("0"), R("2"), R("5")},
                               {test::seq(F::PowerDecreasing, "0", "1"), test::seq(F::PowerDecreasing, "2", "1")});
    ImageForm low, high;
    low.alpha = pick(allow_flat ? 0 : 1, 4);
    low.beta = pick(1, 6);
    Rational at_two = low.alpha + low.beta + pick(allow_flat ? 0 : 1, 4);
    high.alpha = at_two + pick(0, 3);
    high.beta = pick(1, 6);
    Rational at_five = high.alpha + high.beta + pick(allow_flat ? 0 : 1, 4);
    return SymbolicScaling(base, {0, at_two, at_five}, {low, high});
}

std::vector<Rational> sample_points(std::mt19937_64& rng, std::size_t count)
{
    std::vector<Rational> ts{0, 1, 2, 3, 5, R("1/2"), R("5/2"), R("7/3"), 8};
    while (ts.size() < count)
        ts.emplace_back(static_cast<long>(uniform_below(rng, 800)), static_cast<long>(1 + uniform_below(rng, 100)));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

} // namespace

TEST_CASE("strict extension of the square-root example")
{
    auto psi = root_scaling();
    CHECK(psi.strictly_increasing());
    auto g = extension_of(extend_strict(psi));
    CHECK(g(1) == 2);
    CHECK(g(R("1/4")) == R("3/2"));
    CHECK(g(R("1/9")) == R("4/3"));
    CHECK(g(0) == 0);
    auto ray = g.evaluate(R("3/2"));
    CHECK(ray.value == 3);
    CHECK(ray.rule == "ray");
    auto mid = g.evaluate(R("1/2"));
    CHECK(mid.value == R("5/3"));
    CHECK(mid.rule == "interpolation");
    CHECK(g.evaluate(R("1/4")).rule == "domain");
    // between 1/9 and 1/4 the graph is the chord
    CHECK(g(R("13/72")) == R("17/12"));
    CHECK_THROWS_AS(g(-1), input_error);
}

TEST_CASE("ultrametric extension on the same base")
{
    auto g = extension_of(extend_ultra(root_scaling()));
    CHECK(g(5) == 2);
    CHECK(g.evaluate(5).rule == "supremum");
    CHECK(g(R("1/2")) == R("3/2"));
    CHECK(g(1) == 2);
}

TEST_CASE("one plus reciprocal base")
{
    auto psi = square_scaling();
    SUBCASE("ultra is blocked at the initial interval")
    {
        auto b = blocked_of(extend_ultra(psi));
        CHECK(b.regime.tag == RegimeTag::UltraBlocked);
        REQUIRE(b.regime.witness);
        CHECK(b.regime.witness->str() == "(0,1]");
        CHECK_FALSE(b.reason.empty());
        CHECK(std::holds_alternative<Blocked>(extend_strict(psi)));
    }
    SUBCASE("pseudo extends")
    {
        auto g = extension_of(extend_pseudo(psi));
        CHECK(g(R("1/2")) == 0);
        CHECK(g(1) == 0);
        CHECK(g(R("3/2")) == R("1/4"));
        CHECK(g(2) == 1);
        CHECK(g(5) == 1);
        CHECK(g(R("7/5")) == R("1/9"));
    }
    SUBCASE("the Extension constructor refuses a blocked pair")
    {
        CHECK_THROWS_AS(Extension(ExtensionMode::Ultra, psi), input_error);
    }
}

TEST_CASE("pseudo extension on a finite base")
{
    SymbolicScaling psi(DistanceSetDescriptor({R("0"), R("1"), R("2")}), {0, 5, 7}, {});
    auto g = extension_of(extend_pseudo(psi));
    CHECK(g(R("1/2")) == 0);
    CHECK(g(R("3/2")) == 5);
    CHECK(g(3) == 7);

    auto strict = extension_of(extend_strict(psi));
    CHECK(strict(R("1/2")) == R("5/2"));
    CHECK(strict(R("3/2")) == 6);
    CHECK(strict(3) == R("21/2"));
}

TEST_CASE("unbounded image below an accumulation point")
{
    DistanceSetDescriptor base({R("0")}, {test::seq(F::PowerIncreasing, "2", "1")});
    ImageForm up;
    up.shape = ImageForm::Shape::Power;
    up.beta = 1;
    SymbolicScaling psi(base, {0}, {up});
    CHECK_FALSE(psi.image_bounded());
    auto b = blocked_of(extend_pseudo(psi));
    CHECK(b.regime.tag == RegimeTag::PseudoBlocked);
    CHECK(b.regime.witness->str() == "[2,∞)");

    // a bounded image gets through
    SymbolicScaling bounded(base, {0}, {inverse_power("3", "-1")});
    auto g = extension_of(extend_pseudo(bounded));
    CHECK(g(100) == 3);
}

TEST_CASE("point between limit and sequence")
{
    // 0 is not a limit, so (0,m) is the initial interval
    DistanceSetDescriptor base({R("0"), R("1")}, {test::seq(F::PowerDecreasing, "1", "1", 1, 2)});
    SymbolicScaling psi(base, {0, 2}, {inverse_power("2", "4")});
    auto g = extension_of(extend_ultra(psi));
    auto initial = g.evaluate(R("1/2"));
    CHECK(initial.rule == "initial");
    CHECK(initial.value == 1);
    auto s = extension_of(extend_strict(psi));
    CHECK(s(R("1/2")) == 1);
}

TEST_CASE("precondition errors")
{
    SymbolicScaling flat(DistanceSetDescriptor({R("0"), R("1"), R("2")}), {0, 5, 5}, {});
    CHECK_FALSE(flat.strictly_increasing());
    CHECK_THROWS_AS(extend_strict(flat), input_error);
    SymbolicScaling zero(DistanceSetDescriptor({R("0"), R("1"), R("2")}), {0, 0, 5}, {});
    CHECK_FALSE(zero.positive());
    CHECK_THROWS_AS(extend_ultra(zero), input_error);
    CHECK(std::holds_alternative<Extension>(extend_pseudo(zero)));

    CHECK_THROWS_AS(SymbolicScaling(DistanceSetDescriptor({R("0"), R("1")}), {1, 5}, {}), input_error);
    CHECK_THROWS_AS(SymbolicScaling(DistanceSetDescriptor({R("0"), R("1")}), {0, 5, 6}, {}), input_error);
    CHECK_THROWS_AS(SymbolicScaling(DistanceSetDescriptor({R("0"), R("1")}), {0, 5}, {inverse_power("1", "1")}),
                    input_error);
    // decreasing terms need a decreasing image
    DistanceSetDescriptor tb({R("0")}, {test::seq(F::PowerDecreasing, "0", "1")});
    CHECK_THROWS_AS(SymbolicScaling(tb, {0}, {inverse_power("3", "-1")}), input_error);
    // image tail must stay above ψ(0)
    CHECK_NOTHROW(SymbolicScaling(tb, {0}, {inverse_power("0", "1")}));
    // the head has to keep going the same way
    auto headed = inverse_power("0", "1");
    headed.head = {R("1"), R("2")};
    CHECK_THROWS_AS(SymbolicScaling(tb, {0}, {headed}), input_error);
    headed.head = {R("3"), R("1")};
    CHECK_NOTHROW(SymbolicScaling(tb, {0}, {headed}));

    CHECK(extension_mode_from_string("ultra") == ExtensionMode::Ultra);
    CHECK_THROWS_AS(extension_mode_from_string("fast"), input_error);
}

TEST_CASE("gap collapse")
{
    SUBCASE("initial closed interval")
    {
        DistanceSetDescriptor base({R("0")}, {test::seq(F::PowerDecreasing, "1", "1")});
        auto psi = gap_collapse_scaling(base, 0, 1);
        CHECK(psi.strictly_increasing());
        CHECK(*psi.at(2) == 1);
        CHECK(*psi.at(R("3/2")) == R("1/2"));
        CHECK(*psi.at(0) == 0);
        CHECK_FALSE(psi.image_limit(0) != Rational(0));
    }
    SUBCASE("interior half-open interval")
    {
        DistanceSetDescriptor base({R("0"), R("1")}, {test::seq(F::PowerDecreasing, "2", "1")});
        auto psi = gap_collapse_scaling(base, 1, 2);
        CHECK(*psi.at(1) == 1);
        CHECK(*psi.at(3) == 2);
        CHECK(*psi.at(R("5/2")) == R("3/2"));
        CHECK(psi.strictly_increasing());
    }
    SUBCASE("no such component")
    {
        DistanceSetDescriptor base({R("0"), R("1"), R("2")});
        CHECK_THROWS_AS(gap_collapse_scaling(base, 0, 1), input_error);
        CHECK_THROWS_AS(gap_collapse_scaling(base, 1, 2), input_error);
    }
}

TEST_CASE("extensions agree with ψ and are monotone")
{
    std::mt19937_64 rng(21);
    for (int round = 0; round < 30; ++round) {
        for (auto mode : {ExtensionMode::Strict, ExtensionMode::Ultra, ExtensionMode::Pseudo}) {
            auto psi = random_two_sequence_scaling(rng, mode != ExtensionMode::Strict);
            if (mode == ExtensionMode::Ultra && !psi.positive())
                continue;
            auto result = extend(mode, psi);
            REQUIRE(std::holds_alternative<Extension>(result));
            const auto& g = std::get<Extension>(result);
            for (unsigned long n = 1; n < 30; ++n) {
                for (std::size_t s = 0; s < 2; ++s) {
                    Member m{Member::Kind::Term, s, Integer(n)};
                    CHECK(g(psi.base().value(m)) == psi(m));
                }
            }
            CHECK(g(2) == *psi.at(2));
            CHECK(g(5) == *psi.at(5));
            auto ts = sample_points(rng, 60);
            for (std::size_t i = 1; i < ts.size(); ++i) {
                if (mode == ExtensionMode::Strict)
                    CHECK(g(ts[i - 1]) < g(ts[i]));
                else
                    CHECK(g(ts[i - 1]) <= g(ts[i]));
            }
        }
    }
}

TEST_CASE("materialized extensions preserve ultrametrics")
{
    auto g = extension_of(extend_strict(root_scaling()));
    auto f = materialize(g, R("1/16"), 2);
    auto v = classify_preserving(f);
    CHECK(v.tag == PreservingTag::UltrametricPreserving);
    CHECK(v.strictly_increasing);
    for (auto t : {R("1/16"), R("1/9"), R("1/4"), R("1/2"), R("1"), R("2")})
        CHECK(f(t) == g(t));

    auto pseudo = extension_of(extend_pseudo(square_scaling()));
    auto fp = materialize(pseudo, R("5/4"), 2);
    // the window sits above the zero set, so only monotonicity is visible here
    CHECK(classify_preserving(fp).tag != PreservingTag::NotPreserving);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto s = random_space(2 + seed % 6, seed, {R("1/9"), R("1/4"), R("1/3"), 1, R("3/2"), 4});
        CHECK(compose_metric(s, f).is_ultrametric());
        CHECK(compose_metric(s, fp).report().verdict != Verdict::NotPseudoultrametric);
    }

    CHECK_THROWS_AS(materialize(g, R("1/100000"), 1, 50), input_error);
    CHECK_THROWS_AS(materialize(g, 2, 1), input_error);
}

TEST_CASE("identity scaling under the sup extension")
{
    DistanceSetDescriptor base({R("0"), R("3")}, {test::seq(F::PowerDecreasing, "1", "1")});
    SymbolicScaling id(base, {0, 3}, {ImageForm::shifted_identity(base.sequences()[0], 0)});
    auto g = extension_of(extend_pseudo(id));
    for (auto t : {R("1/2"), R("1"), R("3/2"), R("2"), R("5/2"), R("3"), R("10")}) {
        CHECK(g(t) <= t);
        if (contains(base, t))
            CHECK(g(t) == t);
    }
    CHECK(g(R("5/2")) == 2);
}

TEST_CASE("collapsed gaps cannot be extended")
{
    DistanceSetDescriptor interior({R("0"), R("1")}, {test::seq(F::PowerDecreasing, "2", "1")});
    auto psi = gap_collapse_scaling(interior, 1, 2);
    CHECK(*psi.at(1) == 1);
    CHECK(*psi.at(R("5/2")) == R("3/2"));
    auto b = blocked_of(extend_strict(psi));
    CHECK(b.regime.tag == RegimeTag::StrictBlocked);
    CHECK(b.regime.witness->str() == "(1,2]");

    DistanceSetDescriptor initial({R("0")}, {test::seq(F::PowerDecreasing, "1", "1")});
    auto shift = gap_collapse_scaling(initial, 0, 1);
    for (unsigned long n = 1; n < 20; ++n)
        CHECK(*shift.at(1 + Rational(1, n)) == Rational(1, n));
    CHECK(shift.positive());
    CHECK(blocked_of(extend_ultra(shift)).regime.tag == RegimeTag::UltraBlocked);
}

TEST_SUITE_END();
