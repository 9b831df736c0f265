#pragma once

#include <functional>
#include <vector>

#include "flipdist/rational.hpp"

namespace flipdist {

using RationalPredicate = std::function<bool(const Rational&)>;

// Stern-Brocot / mediant descent over (0, 1).
//
// The target is an open interval (a, b) contained in (0, 1), described by
// two exact decision predicates: inside(t) is true iff a < t < b, and
// below(t) is true iff t <= a. Interval endpoints may be algebraic; the
// predicates must decide them exactly (e.g. by squaring away square roots).
//
// Returns the first mediant that satisfies inside, which is the unique
// rational of smallest denominator in the interval. Runs of one-sided
// descent are exponentially accelerated, so the predicate count is
// polylogarithmic in the result denominator. max_steps caps the total
// (virtual) mediant steps; exceeding it throws "interval too narrow".
Rational farey_search(const RationalPredicate& inside, const RationalPredicate& below,
                      const mpz_class& max_steps);

// Cauchy lower bound |g| >= |c0| / (|c0| + max |ci|) on the magnitude of any
// root of sum ci x^i. coefficients are ordered low to high degree; c0 must be
// nonzero.
Rational cauchy_root_bound(const std::vector<Rational>& coefficients);

// Step cap for farey_search derived from a positive lower bound on the
// interval width: kFareyCapMultiplier * ceil(1 / width_bound).
mpz_class farey_step_cap(const Rational& width_lower_bound);

// The rational with smallest denominator strictly inside (lo, hi), by
// continued-fraction descent. Used to rebase interval endpoints produced by
// composed constructions back to small denominators. Requires lo < hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace flipdist
