#include <doctest.h>

#include "flipdist/farey.hpp"

using namespace flipdist;

TEST_CASE("farey_search on rational intervals") {
  auto in_interval = [](const Rational& a, const Rational& b) {
    return [a, b](const Rational& t) { return a < t && t < b; };
  };
  auto at_most = [](const Rational& a) {
    return [a](const Rational& t) { return t <= a; };
  };

  SUBCASE("interval (1/3, 1/2) yields 2/5") {
    Rational t = farey_search(in_interval(Rational(1, 3), Rational(1, 2)),
                              at_most(Rational(1, 3)), 1000);
    CHECK(t == Rational(2, 5));
  }
  SUBCASE("interval (0, 1) yields 1/2") {
    Rational t = farey_search(in_interval(Rational(0), Rational(1)), at_most(Rational(0)), 10);
    CHECK(t == Rational(1, 2));
  }
  SUBCASE("narrow interval far from 1/2") {
    Rational lo(999, 100000), hi(1001, 100000);
    Rational t = farey_search(in_interval(lo, hi), at_most(lo), farey_step_cap(hi - lo));
    CHECK(lo < t);
    CHECK(t < hi);
    // Minimal denominator never exceeds twice the inverse width.
    CHECK(t.den() <= 2 * (hi - lo).den() / (hi - lo).num() + 2);
  }
  SUBCASE("cap exceeded") {
    Rational lo(1, 1000000), hi(2, 1000000);
    CHECK_THROWS_WITH(farey_search(in_interval(lo, hi), at_most(lo), 50), "interval too narrow");
  }
}

TEST_CASE("farey_search with a quadratic-irrational endpoint") {
  // Interval (sqrt(2) - 1, 42/100): below(t) iff t <= sqrt(2) - 1, decided
  // exactly by squaring: (t + 1)^2 <= 2 for t + 1 > 0.
  Rational hi(42, 100);
  auto below = [](const Rational& t) {
    Rational u = t + Rational(1);
    return u * u <= Rational(2);
  };
  auto inside = [&](const Rational& t) { return !below(t) && t < hi; };

  // Width bound from the Cauchy root bound of (x + 1 + 42/100)^2 - 2 shifted:
  // p(x) = x^2 + 2.84 x + 0.0164 has root hi - (sqrt(2)-1).
  Rational width = cauchy_root_bound({Rational(164, 10000), Rational(284, 100), Rational(1)});
  Rational t = farey_search(inside, below, farey_step_cap(width));
  CHECK(inside(t));
  Rational u = t + Rational(1);
  CHECK(u * u > Rational(2));
  CHECK(t < hi);
}

TEST_CASE("cauchy_root_bound") {
  CHECK(cauchy_root_bound({Rational(-2), Rational(0), Rational(1)}) == Rational(2, 3));
  // 2/3 <= sqrt(2): 4/9 <= 2.
  CHECK(Rational(2, 3) * Rational(2, 3) <= Rational(2));
  CHECK(cauchy_root_bound({Rational(-1), Rational(1)}) == Rational(1, 2));
  CHECK_THROWS_WITH(cauchy_root_bound({Rational(0), Rational(1)}), "zero constant term");

  // Cubic with known roots 1/2, -3, 5: (2x-1)(x+3)(x-5) expanded:
  // 2x^3 - 5x^2 - 29x + 15. Bound must not exceed the smallest |root|.
  Rational bound = cauchy_root_bound({Rational(15), Rational(-29), Rational(-5), Rational(2)});
  CHECK(bound <= Rational(1, 2));
  CHECK(bound.sign() > 0);
}

TEST_CASE("simplest_between") {
  CHECK(simplest_between(Rational(1, 3), Rational(1, 2)) == Rational(2, 5));
  CHECK(simplest_between(Rational(0), Rational(1)) == Rational(1, 2));
  CHECK(simplest_between(Rational(5, 2), Rational(9, 2)) == Rational(3));
  CHECK(simplest_between(Rational(-1, 2), Rational(1, 3)) == Rational(0));
  CHECK(simplest_between(Rational(-5, 7), Rational(-2, 3)) == Rational(-7, 10));
  Rational lo(123456789, 1000000000), hi(123456790, 1000000000);
  Rational mid = simplest_between(lo, hi);
  CHECK(lo < mid);
  CHECK(mid < hi);
  CHECK(mid.den() < lo.den());
}
