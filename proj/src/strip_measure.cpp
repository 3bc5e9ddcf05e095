// SPDX-License-Identifier: Apache-2.0
#include "cantorlab/strip_measure.hpp"

#include <stdexcept>

#include "cantorlab/errors.hpp"

namespace cantorlab {

StripMeasure::StripMeasure(std::shared_ptr<const AlphaSequence> alphas)
    : alphas_(std::move(alphas)) {
  if (!alphas_) throw std::invalid_argument("StripMeasure needs a sequence");
}

Rational StripMeasure::eval(const Rect& r) const {
  const std::size_t n = r.cyl.size();
  const Dyadic a_n = alphas_->at0(n);
  const auto [left, right] = split_interval(r.interval, a_n);

  Dyadic total;
  if (right) total = total + right->length().mul_pow2(-static_cast<long>(n));
  if (left) {
    std::vector<Dyadic> breaks;
    breaks.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) breaks.push_back(alphas_->at(j));
    for (const auto& [band, piece] : strip_partition(*left, breaks))
      if (!r.cyl.has_one_from(band))
        total = total + piece.length().mul_pow2(-static_cast<long>(band));
  }
  return total.to_rational();
}

Rational StripMeasure::marginal(const BitString& prefix) const {
  return eval({DyadicInterval(Dyadic(0), Dyadic(1)), prefix});
}

ConditionalReport StripMeasure::conditional(const DyadicInterval& interval,
                                            const BitString& prefix) const {
  const Rational marg = marginal(prefix);
  if (marg == 0)
    throw ZeroMarginal("prefix " + prefix.display() + " has zero marginal mass");
  const Rational ratio = eval({interval, prefix}) / marg;

  const Dyadic a = alphas_->at0(prefix.size());
  Rational predicted = 0;
  if (auto cut = DyadicInterval::make(max(interval.lo(), a), interval.hi()))
    predicted = cut->length().to_rational() / (Rational(1) - a.to_rational());
  return {prefix, interval, ratio, predicted, prefix.size()};
}

Rational StripMeasure::atom_mass_cumulative(std::size_t N) const {
  Rational total = 0;
  BitString zeros;
  for (std::size_t n = 0; n <= N; ++n) {
    // band n restricted to one length-n cylinder; every other length-n
    // cylinder carries the same mass there, so scale by the count 2^n
    const DyadicInterval band(alphas_->at0(n), alphas_->at(n + 1));
    total += eval({band, zeros}) * pow2_rat(static_cast<long>(n));
    zeros.append(0);
  }
  return total;
}

}  // namespace cantorlab
