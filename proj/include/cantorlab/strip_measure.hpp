// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>

#include "cantorlab/alpha.hpp"
#include "cantorlab/interval.hpp"

namespace cantorlab {

struct ConditionalReport {
  BitString prefix;
  DyadicInterval interval;
  Rational ratio;      // mass(interval x [prefix]) / marginal(prefix)
  Rational predicted;  // |interval ∩ [a_{|prefix|}, 1)| / (1 - a_{|prefix|})
  std::size_t depth;   // |prefix|
  bool exact_match() const { return ratio == predicted; }
};

/*
 * Bivariate measure on [0,1) x 2^N built over an increasing sequence (a_n).
 * On a rectangle i x [y] with n = |y| it splits i at a_n: the part at or
 * above a_n carries plain product mass |piece| * 2^-n, while the part below
 * is sliced into the bands [a_{j}, a_{j+1}) (a_0 = 0); the band-j slice
 * contributes |slice| * 2^-j, but only when y has no 1 among bits j+1..n,
 * i.e. when [y] meets the branch that is locked to zeros from depth j on.
 * Total mass is 1, the first marginal is Lebesgue, and all values are exact
 * rationals.
 */
class StripMeasure {
 public:
  explicit StripMeasure(std::shared_ptr<const AlphaSequence> alphas);

  Rational eval(const Rect& r) const;
  Rational marginal(const BitString& prefix) const;  // eval([0,1) x [prefix])

  // conditional mass of `interval` given the second coordinate starts with
  // `prefix`, paired with the closed-form value it converges to
  ConditionalReport conditional(const DyadicInterval& interval, const BitString& prefix) const;

  // combined mass of the horizontal segments [a_n, a_{n+1}) x {y 0^inf} over
  // n <= N and |y| = n: all the mass the first N+1 bands ever carry
  Rational atom_mass_cumulative(std::size_t N) const;

  const AlphaSequence& alphas() const { return *alphas_; }

 private:
  std::shared_ptr<const AlphaSequence> alphas_;
};

}  // namespace cantorlab
