#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tilescope/rational.hpp"

using tilescope::Rational;

TEST_CASE("reduction and normal form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, -7).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(-Rational(1, 2) == Rational(-1, 2));
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
}

TEST_CASE("comparisons avoid overflow in cross multiplication") {
    Rational big(1'000'000'007LL, 3);
    CHECK(big > Rational(1));
    CHECK(Rational(-1, 1000000000) < Rational(1, 1000000000));
    CHECK(Rational(5, 7) <= Rational(5, 7));
}

TEST_CASE("integrality") {
    CHECK(Rational(6, 3).is_integer());
    CHECK(Rational(6, 3).to_integer() == 2);
    CHECK_FALSE(Rational(5, 3).is_integer());
    CHECK_THROWS_AS(Rational(5, 3).to_integer(), std::invalid_argument);
}

TEST_CASE("string form round trips") {
    CHECK(Rational(5, 7).str() == "5/7");
    CHECK(Rational(0).str() == "0/1");
    CHECK(Rational(-11, 16).str() == "-11/16");
    CHECK(Rational::parse("5/7") == Rational(5, 7));
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK(Rational::parse(Rational(17, 22).str()) == Rational(17, 22));
}
