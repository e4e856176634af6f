#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "faithcheck/errors.hpp"
#include "faithcheck/rational.hpp"

using faithcheck::InputError;
using faithcheck::ParseError;
using faithcheck::Rational;

TEST_CASE("lowest terms and zero normalization") {
    CHECK(Rational(4, 16).str() == "1/4");
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational(8, 8).str() == "1");
    CHECK(Rational(4, 16) == Rational(1, 4));
}

TEST_CASE("parse accepts int and fraction forms only") {
    CHECK(Rational::parse("3/16").str() == "3/16");
    CHECK(Rational::parse("2") == Rational(2));
    CHECK(Rational::parse("0") == Rational(0));
    CHECK(Rational::parse("4/30") == Rational(2, 15));
    CHECK_THROWS_AS(Rational::parse("-1/2"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/-2"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("0.5"), ParseError);
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK_THROWS_AS(Rational::parse("a/b"), ParseError);
}

TEST_CASE("exact arithmetic") {
    Rational a(1, 3), b(1, 6);
    CHECK((a + b).str() == "1/2");
    CHECK((a * b).str() == "1/18");
    CHECK((a / b).str() == "2");
    CHECK(a > b);
    CHECK(b < a);
    CHECK(Rational(1, 120) + Rational(119, 120) == Rational(1));
    CHECK_THROWS_AS(a / Rational(0), InputError);
    CHECK_THROWS_AS(Rational(-1, 2), InputError);
    CHECK_THROWS_AS(Rational(1, 0), InputError);
}

TEST_CASE("no overflow on large compound denominators") {
    // products of ten 97-denominator factors exceed 64-bit range
    Rational p(1);
    for (int i = 0; i < 10; ++i) p *= Rational(96, 97);
    Rational q(1);
    for (int i = 0; i < 10; ++i) q *= Rational(1, 97);
    CHECK(p.str() == "66483263599150104576/73742412689492826049");
    CHECK(q.str() == "1/73742412689492826049");
    CHECK(p + q > Rational(0));
}
