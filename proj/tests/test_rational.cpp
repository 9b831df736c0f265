#include <doctest.h>

#include <sstream>

#include "flipdist/rational.hpp"

using flipdist::Rational;

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational(0, 7).den() == 1);
  Rational sum = Rational(1, 6) + Rational(1, 3);
  CHECK(sum.num() == 1);
  CHECK(sum.den() == 2);
}

TEST_CASE("rational arithmetic") {
  Rational a(3, 5), b(-2, 7);
  CHECK(a + b == Rational(11, 35));
  CHECK(a - b == Rational(31, 35));
  CHECK(a * b == Rational(-6, 35));
  CHECK(a / b == Rational(-21, 10));
  CHECK(-a == Rational(-3, 5));
  CHECK(flipdist::abs(b) == Rational(2, 7));
  CHECK(a > b);
  CHECK_THROWS(a / Rational(0));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational text round trip") {
  CHECK(Rational::parse("3/5") == Rational(3, 5));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK(Rational::parse("+4/6") == Rational(2, 3));
  CHECK(Rational(-7, 3).str() == "-7/3");
  CHECK(Rational(5).str() == "5");
  CHECK_THROWS(Rational::parse("1/”"));
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational::parse("2/0"));
  CHECK_THROWS(Rational::parse("a/b"));
  CHECK_THROWS(Rational::parse("1/2/3"));

  std::ostringstream os;
  os << Rational(22, 8);
  CHECK(os.str() == "11/4");
}
