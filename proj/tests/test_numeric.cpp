#include <doctest.h>

#include "liouville/numeric.hpp"

using namespace liouville;

TEST_CASE("parse_rational accepts fractions, decimals and exponents")
{
    CHECK(parse_rational("1/10") == Rational(1, 10));
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("0.1") == Rational(1, 10));
    CHECK(parse_rational("+2.50") == Rational(5, 2));
    CHECK(parse_rational("1e-30") == Rational(1, mp::pow(Integer(10), 30)));
    CHECK(parse_rational("1.5E2") == Rational(150));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("0.5001") == Rational(5001, 10000));
    CHECK(parse_rational("0.08") == Rational(2, 25));
    CHECK(parse_rational("000") == 0);
}

TEST_CASE("parse_rational rejects malformed input")
{
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1e"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("2x"), std::invalid_argument);
}

TEST_CASE("precision scope sets and restores the working precision")
{
    unsigned before = precision_bits();
    CHECK(before >= 100);
    {
        PrecisionScope scope(512);
        CHECK(precision_bits() >= 512);
        Real x = to_real(Rational(1, 3));
        CHECK(precision_of(x) >= 512);
    }
    CHECK(precision_bits() == before);
}

TEST_CASE("rational to real conversion is correctly rounded")
{
    Real third = to_real(Rational(1, 3));
    CHECK(abs(third * 3 - 1) < pow(Real(2), -int(precision_bits()) + 2));
    CHECK(to_rational(to_real(Rational(3, 8))) == Rational(3, 8));
}

TEST_CASE("rpow handles zero bases exactly")
{
    CHECK(rpow(Real(0), Real(0)) == 1);
    CHECK(rpow(Real(0), Real(2)) == 0);
    CHECK_THROWS_AS(rpow(Real(0), Real(-1)), std::domain_error);
    CHECK(abs(rpow(Real(4), Real(0.5)) - 2) < Real(1e-30));
}

TEST_CASE("infinity and formatting")
{
    CHECK_FALSE(is_finite(positive_infinity()));
    CHECK(is_finite(Real(1)));
    CHECK(format_real(positive_infinity()) == "inf");
    CHECK(format_real(Real(0.5), 5) == "0.5");
    CHECK(format_rational(Rational(-4, 6)) == "-2/3");
    CHECK(default_tolerance() == Rational(1, mp::pow(Integer(10), 30)));
}
