#include "ultra/rational.hpp"

#include "doctest.h"
#include "support.hpp"

using ultra::ExtendedBound;
using ultra::Integer;
using ultra::Rational;
using test::R;

TEST_SUITE_BEGIN("rational");

TEST_CASE("parse and print")
{
    CHECK(R("3/4").str() == "3/4");
    CHECK(R("6/8").str() == "3/4");
    CHECK(R("-2/4").str() == "-1/2");
    CHECK(R("10/5").str() == "2");
    CHECK(R("0/7").str() == "0");
    CHECK(R("+5").str() == "5");
    CHECK(R("007").str() == "7");

    for (const char* bad : {"", "1/", "/2", "1/0", "1.5", "a", "1/-2", "1 /2", "--1", "1e3"})
        CHECK_THROWS_AS(Rational::parse(bad), ultra::input_error);
}

TEST_CASE("arithmetic stays canonical")
{
    CHECK(R("1/3") + R("1/6") == R("1/2"));
    CHECK(R("1/3") - R("1/2") == R("-1/6"));
    CHECK(R("2/3") * R("9/4") == R("3/2"));
    CHECK(R("2/3") / R("4/9") == R("3/2"));
    CHECK((-R("1/2")).str() == "-1/2");
    CHECK(R("-3/4").abs() == R("3/4"));
    CHECK(R("-3/4").reciprocal() == R("-4/3"));
    CHECK(R("2/3").pow(3) == R("8/27"));
    CHECK(R("5").pow(0) == 1);
    CHECK_THROWS(R("1") / R("0"));
    CHECK_THROWS(R("0").reciprocal());
    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), ultra::input_error);
}

TEST_CASE("ordering")
{
    CHECK(R("1/3") < R("1/2"));
    CHECK(R("-1") < R("0"));
    CHECK(R("7/7") == 1);
    CHECK(ultra::max(R("1/3"), R("2/7")) == R("1/3"));
    CHECK(ultra::min(R("1/3"), R("2/7")) == R("2/7"));
    CHECK(R("-3/2").sign() == -1);
    CHECK(R("0").is_zero());
    CHECK(R("4/2").is_integer());
}

TEST_CASE("floor, ceil and roots")
{
    CHECK(R("7/2").floor() == 3);
    CHECK(R("7/2").ceil() == 4);
    CHECK(R("-7/2").floor() == -4);
    CHECK(R("-7/2").ceil() == -3);
    CHECK(R("3").floor() == 3);
    CHECK(ultra::integer_root(Integer(26), 3) == 2);
    CHECK(ultra::integer_root(Integer(27), 3) == 3);
    CHECK(ultra::integer_root(Integer(0), 2) == 0);
    CHECK_THROWS(ultra::integer_root(Integer(-1), 2));
}

TEST_CASE("decimal rendering")
{
    CHECK(R("5/3").decimal(5) == "1.66667");
    CHECK(R("1/8").decimal(2) == "0.13");
    CHECK(R("-1/8").decimal(2) == "-0.13");
    CHECK(R("2").decimal(3) == "2.000");
    CHECK(R("1/3").decimal(0) == "0");
}

TEST_CASE("extended bounds")
{
    auto inf = ExtendedBound::infinity();
    CHECK(inf.is_infinite());
    CHECK(ExtendedBound(R("5")) < inf);
    CHECK(ExtendedBound(R("1/2")) < ExtendedBound(R("2/3")));
    CHECK(inf == ExtendedBound::infinity());
    CHECK(inf.str() == "∞");
    CHECK_THROWS_AS(inf.value(), std::logic_error);
}

TEST_SUITE_END();
