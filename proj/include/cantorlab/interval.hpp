// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantorlab/bitstring.hpp"
#include "cantorlab/dyadic.hpp"

namespace cantorlab {

/*
 * Half-open dyadic interval [lo, hi) with 0 <= lo < hi <= 1.  Half-open ends
 * make every partition in this library a literal set partition, so additivity
 * checks are set identities rather than measure-zero hand-waving.
 */
class DyadicInterval {
 public:
  DyadicInterval(Dyadic lo, Dyadic hi);  // std::invalid_argument on malformed bounds
  static std::optional<DyadicInterval> make(const Dyadic& lo, const Dyadic& hi);

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  Dyadic length() const { return hi_ - lo_; }

  bool contains(const Dyadic& p) const { return lo_ <= p && p < hi_; }
  bool contains(const DyadicInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  std::optional<DyadicInterval> intersect(const DyadicInterval& o) const;

  bool operator==(const DyadicInterval& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }

  std::string str() const;  // "[p/q, p/q)"

 private:
  Dyadic lo_, hi_;
};

// Product of an interval on the unit segment with a cylinder of the Cantor
// space; the basic measurable rectangle everything below is evaluated on.
struct Rect {
  DyadicInterval interval;
  BitString cyl;
  std::string str() const;
};

// [x] as the half-open interval [0.x, 0.x + 2^-|x|)
DyadicInterval cylinder_to_interval(const BitString& x);

// Lebesgue-times-coin-flipping product mass: |i| * 2^-|cyl|
Rational uniform_measure(const Rect& r);

// left part strictly below `cut`, right part at or above it; either may be absent
std::pair<std::optional<DyadicInterval>, std::optional<DyadicInterval>> split_interval(
    const DyadicInterval& i, const Dyadic& cut);

/*
 * Slice `i` along strictly increasing breaks a_1 < ... < a_m into the pieces
 * it shares with the bands [0,a_1), [a_1,a_2), ..., [a_{m-1},a_m).  Each
 * returned pair carries the band index (0-based).  The interval must lie
 * inside [0, a_m); PartitionError otherwise, or when breaks are unsorted,
 * duplicated, or outside (0,1].
 */
std::vector<std::pair<std::size_t, DyadicInterval>> strip_partition(
    const DyadicInterval& i, const std::vector<Dyadic>& breaks);

}  // namespace cantorlab
