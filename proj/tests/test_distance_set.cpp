#include "ultra/distance_set.hpp"
#include "ultra/generators.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include <random>

using namespace ultra;
using test::geo;
using test::R;
using test::seq;
using F = SequenceFamily;

TEST_SUITE_BEGIN("distance set");

namespace {

std::vector<std::string> component_texts(const DistanceSetDescriptor& d)
{
    std::vector<std::string> out;
    for (const auto& c : components(d).components)
        out.push_back(to_string(c));
    return out;
}

// Random rationals in [0, top] with small denominators, plus exact members.
std::vector<Rational> samples(const DistanceSetDescriptor& d, const Rational& top, std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    std::vector<Rational> out = oracle::members(d, 30);
    for (int i = 0; i < count; ++i) {
        Integer den(static_cast<unsigned long>(1 + uniform_below(rng, 60)));
        Rational unit(Integer(static_cast<unsigned long>(uniform_below(rng, 1000))), Integer(1000));
        out.push_back(top * unit + Rational(Integer(1), den) * (uniform_below(rng, 2) ? 1 : 0));
    }
    return out;
}

} // namespace

TEST_CASE("sequence terms, membership and gaps")
{
    auto dec = seq(F::PowerDecreasing, "0", "1", 2);
    CHECK(dec.term(3) == R("1/9"));
    CHECK(dec.first_term() == 1);
    CHECK(dec.index_of(R("1/16")) == Integer(4));
    CHECK_FALSE(dec.index_of(R("1/8")));
    CHECK_FALSE(dec.index_of(R("0")));
    CHECK(dec.gap_index(R("1/8")) == 2);
    CHECK(dec.gap(2) == std::make_pair(R("1/9"), R("1/4")));

    auto inc = seq(F::PowerIncreasing, "2", "1");
    CHECK(inc.first_term() == 1);
    CHECK(inc.index_of(R("5/3")) == Integer(3));
    CHECK(inc.gap_index(R("8/5")) == 2);
    CHECK_FALSE(inc.limit() != R("2"));

    auto up = seq(F::PowerUnbounded, "1", "2", 2);
    CHECK(up.term(3) == 19);
    CHECK(up.index_of(R("33")) == Integer(4));
    CHECK_FALSE(up.index_of(R("34")));
    CHECK(up.gap_index(R("20")) == 3);
    CHECK(up.hull_hi().is_infinite());
    CHECK_FALSE(up.limit());

    auto g = geo(F::GeometricDecreasing, "0", "1", "1/2");
    CHECK(g.term(3) == R("1/8"));
    CHECK(g.index_of(R("1/16")) == Integer(4));
    CHECK_FALSE(g.index_of(R("3/16")));
    CHECK(g.gap_index(R("3/16")) == 2);

    auto gi = geo(F::GeometricIncreasing, "1", "1", "1/3");
    CHECK(gi.term(1) == R("2/3"));
    CHECK(gi.index_of(R("8/9")) == Integer(2));
    CHECK(gi.gap_index(R("7/9")) == 1);

    auto late = seq(F::PowerDecreasing, "0", "1", 1, 3);
    CHECK(late.first_term() == R("1/3"));
    CHECK_FALSE(late.index_of(R("1/2")));
}

TEST_CASE("gap_index brackets t for every family")
{
    std::vector<SequencePiece> pieces{seq(F::PowerDecreasing, "1", "3", 2), seq(F::PowerIncreasing, "5", "2", 3),
                                      seq(F::PowerUnbounded, "0", "1/2", 1), geo(F::GeometricDecreasing, "0", "2", "2/3"),
                                      geo(F::GeometricIncreasing, "4", "1", "1/5"), seq(F::PowerDecreasing, "0", "1", 1, 4)};
    std::mt19937_64 rng(3);
    for (const auto& p : pieces) {
        for (int i = 0; i < 300; ++i) {
            Integer n = p.first_index + static_cast<unsigned long>(uniform_below(rng, 12));
            auto [lo, hi] = p.gap(n);
            Rational w(Integer(static_cast<unsigned long>(1 + uniform_below(rng, 98))), Integer(99));
            Rational t = lo + (hi - lo) * w;
            CHECK(p.in_hull_interior(t));
            CHECK_FALSE(p.index_of(t));
            CHECK(p.gap_index(t) == n);
        }
        for (unsigned long n = 0; n < 12; ++n)
            CHECK(p.index_of(p.term(p.first_index + n)) == p.first_index + n);
    }
}

TEST_CASE("descriptor validation")
{
    auto dec = seq(F::PowerDecreasing, "0", "1");
    CHECK_THROWS_AS(DistanceSetDescriptor({R("1")}), input_error);
    CHECK_THROWS_AS(DistanceSetDescriptor({R("0"), R("1"), R("1")}), input_error);
    CHECK_THROWS_AS(DistanceSetDescriptor({R("-1"), R("0")}), input_error);
    CHECK_THROWS_AS(DistanceSetDescriptor({R("0"), R("1/3")}, {dec}), input_error);
    CHECK_THROWS_AS(DistanceSetDescriptor({R("0")}, {dec, seq(F::PowerDecreasing, "0", "1/2")}), input_error);
    CHECK_THROWS_AS(DistanceSetDescriptor({R("0")}, {seq(F::PowerIncreasing, "1", "1", 1, 2), seq(F::PowerDecreasing, "1/4", "1/4")}),
                    input_error);
    CHECK_THROWS_AS(DistanceSetDescriptor({R("0")}, {seq(F::PowerDecreasing, "0", "0")}), input_error);
    CHECK_THROWS_AS(DistanceSetDescriptor({R("0")}, {seq(F::PowerIncreasing, "1", "1")}), input_error);
    CHECK_THROWS_AS(DistanceSetDescriptor({R("0")}, {geo(F::GeometricDecreasing, "0", "1", "1")}), input_error);
    CHECK_THROWS_AS(DistanceSetDescriptor({R("0")}, {seq(F::PowerDecreasing, "0", "1", 0)}), input_error);
    CHECK_THROWS_AS(DistanceSetDescriptor({R("0")}, {seq(F::PowerDecreasing, "0", "1", 1, 0)}), input_error);

    // hulls touching at a limit are fine
    DistanceSetDescriptor touching({R("0")}, {seq(F::PowerIncreasing, "1", "1/2"), seq(F::PowerDecreasing, "1", "1")});
    CHECK(touching.sequences().size() == 2);
}

TEST_CASE("membership and suprema")
{
    DistanceSetDescriptor d({R("0"), R("1")}, {seq(F::PowerDecreasing, "2", "1")});
    CHECK(contains(d, R("0")));
    CHECK(contains(d, R("1")));
    CHECK(contains(d, R("5/2")));
    CHECK(contains(d, R("3")));
    CHECK_FALSE(contains(d, R("2")));
    CHECK_FALSE(contains(d, R("12/5")));
    auto s = supremum(d);
    CHECK(s.value == ExtendedBound(R("3")));
    CHECK(s.attained);

    auto inc = supremum(DistanceSetDescriptor({R("0")}, {seq(F::PowerIncreasing, "2", "1")}));
    CHECK(inc.value == ExtendedBound(R("2")));
    CHECK_FALSE(inc.attained);

    auto up = supremum(DistanceSetDescriptor({R("0")}, {seq(F::PowerUnbounded, "0", "1")}));
    CHECK(up.value.is_infinite());

    auto finite = supremum(DistanceSetDescriptor({R("0"), R("1"), R("2")}));
    CHECK(finite.value == ExtendedBound(R("2")));
    CHECK(finite.attained);
}

TEST_CASE("component fixtures")
{
    CHECK(component_texts(DistanceSetDescriptor({R("0"), R("1"), R("2")}))
          == std::vector<std::string>{"(0,1) Open", "(1,2) Open", "(2,∞) OpenRay"});
    CHECK(component_texts(DistanceSetDescriptor({R("0")}, {seq(F::PowerDecreasing, "0", "1", 2)}))
          == std::vector<std::string>{"gaps between consecutive terms of {1/n^2 : n ≥ 1} Open", "(1,∞) OpenRay"});
    CHECK(component_texts(DistanceSetDescriptor({R("0")}, {seq(F::PowerDecreasing, "1", "1")}))
          == std::vector<std::string>{"(0,1] ClosedRight", "gaps between consecutive terms of {1 + 1/n : n ≥ 1} Open",
                                      "(2,∞) OpenRay"});
    CHECK(component_texts(DistanceSetDescriptor({R("0")}, {seq(F::PowerIncreasing, "2", "1")}))
          == std::vector<std::string>{"(0,1) Open", "gaps between consecutive terms of {2 - 1/n : n ≥ 1} Open",
                                      "[2,∞) ClosedRay"});
    CHECK(component_texts(DistanceSetDescriptor({R("0"), R("1")}, {seq(F::PowerDecreasing, "2", "1")}))
          == std::vector<std::string>{"(0,1) Open", "(1,2] ClosedRight",
                                      "gaps between consecutive terms of {2 + 1/n : n ≥ 1} Open", "(3,∞) OpenRay"});
    CHECK(component_texts(DistanceSetDescriptor({R("0")})) == std::vector<std::string>{"(0,∞) OpenRay"});
}

TEST_CASE("closed and single-point components")
{
    // increasing to 1 and decreasing to 2: [1,2] is a component
    DistanceSetDescriptor closed({R("0")}, {seq(F::PowerIncreasing, "1", "1", 1, 2), seq(F::PowerDecreasing, "2", "1")});
    auto texts = component_texts(closed);
    CHECK(std::find(texts.begin(), texts.end(), "[1,2] Closed") != texts.end());
    auto r = classify(closed);
    CHECK(r.tag == RegimeTag::StrictBlocked);
    CHECK(r.witness == Interval::closed(1, 2));

    // both sides accumulate at 1 which is missing
    DistanceSetDescriptor pinch({R("0")}, {seq(F::PowerIncreasing, "1", "1/2"), seq(F::PowerDecreasing, "1", "1")});
    texts = component_texts(pinch);
    CHECK(std::find(texts.begin(), texts.end(), "{1} Singleton") != texts.end());
    CHECK(classify(pinch).tag == RegimeTag::AllExtend);

    // with 1 present there is nothing between the two hulls
    DistanceSetDescriptor joined({R("0"), R("1")}, {seq(F::PowerIncreasing, "1", "1/2"), seq(F::PowerDecreasing, "1", "1")});
    CHECK(component_texts(joined).size() == 4);
}

TEST_CASE("points inside a sequence hull split their gap")
{
    DistanceSetDescriptor d({R("0"), R("3/4"), R("5/6")}, {seq(F::PowerDecreasing, "0", "1")});
    auto c = components(d);
    auto texts = component_texts(d);
    CHECK(texts == std::vector<std::string>{"gaps between consecutive terms of {1/n : n ≥ 1} except n ∈ {1} Open",
                                            "(1/2,3/4) Open", "(3/4,5/6) Open", "(5/6,1) Open", "(1,∞) OpenRay"});
    CHECK(c.count_containing(R("2/3")) == 1);
    CHECK(c.locate(R("2/3"))->component == 1);
    CHECK(c.locate(R("2/5"))->gap == Integer(2));
    CHECK_FALSE(c.locate(R("3/4")));
}

TEST_CASE("components partition the complement")
{
    std::vector<DistanceSetDescriptor> corpus{
        DistanceSetDescriptor({R("0"), R("1"), R("2")}),
        DistanceSetDescriptor({R("0")}, {seq(F::PowerDecreasing, "0", "1", 2)}),
        DistanceSetDescriptor({R("0")}, {seq(F::PowerDecreasing, "1", "1")}),
        DistanceSetDescriptor({R("0")}, {seq(F::PowerIncreasing, "2", "1")}),
        DistanceSetDescriptor({R("0"), R("1")}, {seq(F::PowerDecreasing, "2", "1")}),
        DistanceSetDescriptor({R("0"), R("3/4")}, {seq(F::PowerDecreasing, "0", "1"), seq(F::PowerUnbounded, "1", "1")}),
        DistanceSetDescriptor({R("0")}, {geo(F::GeometricDecreasing, "0", "1", "1/2"), geo(F::GeometricIncreasing, "3", "2", "1/2")}),
        DistanceSetDescriptor({R("0")}, {seq(F::PowerIncreasing, "1", "1", 1, 2), seq(F::PowerDecreasing, "2", "1")}),
    };
    std::uint64_t seed = 1;
    for (const auto& d : corpus) {
        const auto c = components(d);
        const auto known = oracle::members(d, 30);
        for (const auto& t : samples(d, R("6"), seed++, 400)) {
            const bool member = contains(d, t);
            if (std::binary_search(known.begin(), known.end(), t))
                CHECK(member);
            CHECK(c.count_containing(t) == (member ? 0u : 1u));
        }
    }
}

TEST_CASE("regime truth table")
{
    auto tag = [](const DistanceSetDescriptor& d) { return classify(d).tag; };
    CHECK(tag(DistanceSetDescriptor({R("0"), R("1"), R("2")})) == RegimeTag::AllExtend);
    CHECK(tag(DistanceSetDescriptor({R("0")}, {seq(F::PowerDecreasing, "0", "1", 2)})) == RegimeTag::AllExtend);
    CHECK(tag(DistanceSetDescriptor({R("0")}, {seq(F::PowerDecreasing, "1", "1")})) == RegimeTag::UltraBlocked);
    CHECK(tag(DistanceSetDescriptor({R("0")}, {seq(F::PowerIncreasing, "2", "1")})) == RegimeTag::PseudoBlocked);
    CHECK(tag(DistanceSetDescriptor({R("0"), R("1")}, {seq(F::PowerDecreasing, "2", "1")})) == RegimeTag::StrictBlocked);
    CHECK(tag(DistanceSetDescriptor({R("0")}, {seq(F::PowerUnbounded, "0", "1")})) == RegimeTag::AllExtend);
    CHECK(tag(DistanceSetDescriptor({R("0")})) == RegimeTag::AllExtend);
    // increasing sequence whose limit is present: [a,b) after it
    CHECK(tag(DistanceSetDescriptor({R("0"), R("3")}, {seq(F::PowerIncreasing, "2", "1")})) == RegimeTag::StrictBlocked);
    // both obstructions: the ray wins
    CHECK(tag(DistanceSetDescriptor({R("0")}, {seq(F::PowerDecreasing, "1", "1"), seq(F::PowerIncreasing, "4", "1", 1, 2)}))
          == RegimeTag::PseudoBlocked);
}

TEST_CASE("totally bounded shape")
{
    CHECK(is_totally_bounded_distance_set(DistanceSetDescriptor({R("0")}, {seq(F::PowerDecreasing, "0", "1", 2)})));
    CHECK(is_totally_bounded_distance_set(DistanceSetDescriptor({R("0")}, {geo(F::GeometricDecreasing, "0", "3", "1/3")})));
    CHECK_FALSE(is_totally_bounded_distance_set(DistanceSetDescriptor({R("0")}, {seq(F::PowerDecreasing, "1", "1")})));
    CHECK_FALSE(is_totally_bounded_distance_set(DistanceSetDescriptor({R("0"), R("2")}, {seq(F::PowerDecreasing, "0", "1")})));
    CHECK_FALSE(is_totally_bounded_distance_set(DistanceSetDescriptor({R("0"), R("1")})));

    // finite truncations of the max construction keep the shape {0} plus values above the minimum
    auto s = max_space({R("1/4"), R("1/3"), R("1/2"), R("1")});
    CHECK(distance_set(s).values == std::vector<Rational>{0, R("1/3"), R("1/2"), 1});
}

TEST_CASE("descriptor printing and accumulation points")
{
    DistanceSetDescriptor d({R("0"), R("1")}, {seq(F::PowerDecreasing, "2", "1"), seq(F::PowerUnbounded, "3", "1", 2)});
    CHECK(d.str() == "{0, 1} ∪ {2 + 1/n : n ≥ 1} ∪ {3 + n^2 : n ≥ 1}");
    CHECK(d.accumulation_points() == std::vector<Rational>{2});
    CHECK(d.sequence_converging_to(2, false) == std::size_t{0});
    CHECK_FALSE(d.sequence_converging_to(2, true));
}

TEST_CASE("descriptors from finite distance sets")
{
    auto d = from_finite(distance_set(test::triangle("1", "2")));
    CHECK(d.points() == std::vector<Rational>{0, 1, 2});
    CHECK(d.sequences().empty());
    CHECK(from_finite(FiniteDistanceSet{{0}}).points() == std::vector<Rational>{0});
    auto [small, unused] = ex530_pair(4);
    CHECK(from_finite(distance_set(small)).points() == std::vector<Rational>{0, R("1/9"), R("1/4"), 1});
}

TEST_SUITE_END();
