#include "flipdist/farey.hpp"

#include <stdexcept>

#include "flipdist/config.hpp"

namespace flipdist {

namespace {

struct Frac {
  mpz_class num;
  mpz_class den;
  Rational to_rational() const { return Rational(num, den); }
};

}  // namespace

Rational farey_search(const RationalPredicate& inside, const RationalPredicate& below,
                      const mpz_class& max_steps) {
  Frac lo{0, 1};
  Frac hi{1, 1};
  mpz_class steps = 0;

  // One descent move: from (lo, hi), runs of mediants toward one side are
  // taken in a single exponential+binary search on the run length k.
  while (true) {
    Frac med{lo.num + hi.num, lo.den + hi.den};
    Rational m = med.to_rational();
    if (inside(m)) return m;
    steps += 1;
    if (steps > max_steps) throw std::runtime_error("interval too narrow");

    bool go_up = below(m);  // mediant at or below the interval: move lo up
    auto run_frac = [&](const mpz_class& k) {
      return go_up ? Frac{lo.num + k * hi.num, lo.den + k * hi.den}
                   : Frac{k * lo.num + hi.num, k * lo.den + hi.den};
    };
    auto still_running = [&](const mpz_class& k) {
      Rational t = run_frac(k).to_rational();
      if (inside(t)) return false;
      return go_up ? below(t) : !below(t);
    };

    // Largest k with the k-th run fraction still on the same side.
    mpz_class k_lo = 1;
    mpz_class k_hi = 2;
    while (still_running(k_hi)) {
      k_lo = k_hi;
      k_hi *= 2;
      if (k_hi > max_steps) throw std::runtime_error("interval too narrow");
    }
    while (k_lo + 1 < k_hi) {
      mpz_class mid = (k_lo + k_hi) / 2;
      if (still_running(mid)) k_lo = mid; else k_hi = mid;
    }
    steps += k_lo;
    if (steps > max_steps) throw std::runtime_error("interval too narrow");
    if (go_up) lo = run_frac(k_lo); else hi = run_frac(k_lo);
  }
}

Rational cauchy_root_bound(const std::vector<Rational>& coefficients) {
  if (coefficients.empty() || coefficients[0].is_zero())
    throw std::invalid_argument("zero constant term");
  Rational c0 = abs(coefficients[0]);
  Rational max_rest(0);
  for (size_t i = 1; i < coefficients.size(); ++i)
    max_rest = max(max_rest, abs(coefficients[i]));
  return c0 / (c0 + max_rest);
}

mpz_class farey_step_cap(const Rational& width_lower_bound) {
  if (width_lower_bound.sign() <= 0)
    throw std::invalid_argument("interval width bound must be positive");
  mpz_class inv_ceil = (width_lower_bound.den() + width_lower_bound.num() - 1) / width_lower_bound.num();
  return inv_ceil * config::kFareyCapMultiplier;
}

namespace {

Rational simplest_nonneg(const Rational& lo, const Rational& hi) {
  // 0 <= lo < hi; smallest-denominator rational strictly between.
  mpz_class n = lo.num() / lo.den();  // floor, lo >= 0
  Rational floor_lo(n, 1);
  Rational fa = lo - floor_lo;
  Rational fb = hi - floor_lo;
  if (fb > Rational(1)) return floor_lo + Rational(1);
  // Both bounds now within [0, 1]-ish; recurse on reciprocals.
  if (fa.is_zero()) {
    // Interval (0, fb): pick 1/(floor(1/fb)+1).
    mpz_class k = fb.den() / fb.num() + 1;
    return floor_lo + Rational(mpz_class(1), k);
  }
  Rational inner = simplest_nonneg(Rational(fb.den(), fb.num()), Rational(fa.den(), fa.num()));
  return floor_lo + Rational(inner.den(), inner.num());
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_between needs lo < hi");
  if (lo.sign() >= 0) return simplest_nonneg(lo, hi);
  if (hi.sign() <= 0) return -simplest_nonneg(-hi, -lo);
  return Rational(0);
}

}  // namespace flipdist
