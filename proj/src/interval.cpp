// SPDX-License-Identifier: Apache-2.0
#include "cantorlab/interval.hpp"

#include <stdexcept>

#include "cantorlab/errors.hpp"

namespace cantorlab {

DyadicInterval::DyadicInterval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.sign() < 0 || !(lo_ < hi_) || Dyadic(1) < hi_)
    throw std::invalid_argument("interval bounds must satisfy 0 <= lo < hi <= 1, got [" +
                                lo_.frac_str() + ", " + hi_.frac_str() + ")");
}

std::optional<DyadicInterval> DyadicInterval::make(const Dyadic& lo, const Dyadic& hi) {
  if (!(lo < hi)) return std::nullopt;
  return DyadicInterval(lo, hi);
}

std::optional<DyadicInterval> DyadicInterval::intersect(const DyadicInterval& o) const {
  return make(max(lo_, o.lo_), min(hi_, o.hi_));
}

std::string DyadicInterval::str() const {
  return "[" + lo_.frac_str() + ", " + hi_.frac_str() + ")";
}

std::string Rect::str() const { return interval.str() + " x [" + cyl.display() + "]"; }

DyadicInterval cylinder_to_interval(const BitString& x) {
  const Dyadic lo(x.value(), static_cast<unsigned>(x.size()));
  const Dyadic width(Int(1), static_cast<unsigned>(x.size()));
  return DyadicInterval(lo, lo + width);
}

Rational uniform_measure(const Rect& r) {
  return r.interval.length().to_rational() / pow2_rat(static_cast<long>(r.cyl.size()));
}

std::pair<std::optional<DyadicInterval>, std::optional<DyadicInterval>> split_interval(
    const DyadicInterval& i, const Dyadic& cut) {
  return {DyadicInterval::make(i.lo(), min(i.hi(), cut)),
          DyadicInterval::make(max(i.lo(), cut), i.hi())};
}

std::vector<std::pair<std::size_t, DyadicInterval>> strip_partition(
    const DyadicInterval& i, const std::vector<Dyadic>& breaks) {
  if (breaks.empty()) throw PartitionError("strip_partition needs at least one break");
  Dyadic prev;
  for (const Dyadic& b : breaks) {
    if (!(prev < b))
      throw PartitionError("breaks must be strictly increasing, got " + b.frac_str() +
                           " after " + prev.frac_str());
    prev = b;
  }
  if (Dyadic(1) < breaks.back()) throw PartitionError("breaks must lie in (0, 1]");
  if (breaks.back() < i.hi())
    throw PartitionError("interval " + i.str() + " reaches past the last break " +
                         breaks.back().frac_str());

  std::vector<std::pair<std::size_t, DyadicInterval>> out;
  Dyadic band_lo;
  for (std::size_t j = 0; j < breaks.size(); ++j) {
    if (auto piece = DyadicInterval::make(max(i.lo(), band_lo), min(i.hi(), breaks[j])))
      out.emplace_back(j, *piece);
    band_lo = breaks[j];
  }
  return out;
}

}  // namespace cantorlab
