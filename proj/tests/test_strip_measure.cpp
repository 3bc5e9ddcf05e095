// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <memory>

#include "cantorlab/errors.hpp"
#include "cantorlab/rng.hpp"
#include "cantorlab/strip_measure.hpp"

using namespace cantorlab;

namespace {

Dyadic dy(long num, unsigned exp) { return Dyadic(Int(num), exp); }

std::shared_ptr<AlphaSequence> geo_quarter() {
  return std::make_shared<AlphaSequence>(GeneratorSpec::geometric(dy(1, 2), dy(1, 1)));
}

// Oracle written from first principles in plain rational arithmetic: walk the
// bands [a_j, a_{j+1}) directly, plus the uniform remainder [a_n, 1).  Shares
// nothing with StripMeasure::eval beyond the generator itself.
Rational oracle_eval(const AlphaSequence& a, const Rect& r) {
  const std::size_t n = r.cyl.size();
  const Rational lo = r.interval.lo().to_rational();
  const Rational hi = r.interval.hi().to_rational();
  auto overlap = [&](const Rational& blo, const Rational& bhi) {
    const Rational s = lo > blo ? lo : blo;
    const Rational t = hi < bhi ? hi : bhi;
    return s < t ? t - s : Rational(0);
  };
  Rational total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    bool zeros_from_j = true;
    for (std::size_t b = j; b < n; ++b)
      if (r.cyl.bit(b) == 1) zeros_from_j = false;
    if (!zeros_from_j) continue;
    total += overlap(a.at0(j).to_rational(), a.at(j + 1).to_rational()) /
             pow2_rat(static_cast<long>(j));
  }
  total += overlap(a.at0(n).to_rational(), Rational(1)) / pow2_rat(static_cast<long>(n));
  return total;
}

Rect random_rect(DetRng& rng, std::size_t max_depth) {
  const std::size_t depth = rng.below(max_depth + 1);
  BitString cyl;
  for (std::size_t i = 0; i < depth; ++i) cyl.append(static_cast<int>(rng.bit()));
  const unsigned res = 6;
  std::uint64_t a = rng.below(64), b = rng.below(64) + 1;
  if (a >= b) std::swap(a, b), ++b;
  if (b > 64) b = 64;
  if (a >= b) a = b - 1;
  return {DyadicInterval(Dyadic(Int(a), res), Dyadic(Int(b), res)), cyl};
}

}  // namespace

TEST_CASE("marginal pins on the quarter-half generator") {
  const StripMeasure m(geo_quarter());
  CHECK(m.marginal(BitString()) == Rational(1));
  CHECK(m.marginal(BitString::parse("1")) == Rational(3, 8));
  CHECK(m.marginal(BitString::parse("0")) == Rational(5, 8));
  CHECK(m.marginal(BitString::parse("00")) == Rational(15, 32));
  CHECK(m.marginal(BitString::parse("01")) == Rational(5, 32));
  CHECK(m.marginal(BitString::parse("10")) == Rational(7, 32));
  CHECK(m.marginal(BitString::parse("11")) == Rational(5, 32));
}

TEST_CASE("rectangle pins show the concentration pattern") {
  const StripMeasure m(geo_quarter());
  // below a_1 the branch with an early 1 carries nothing
  CHECK(m.eval({DyadicInterval(Dyadic(), dy(1, 2)), BitString::parse("1")}) == Rational(0));
  CHECK(m.eval({DyadicInterval(Dyadic(), dy(1, 2)), BitString::parse("0")}) == Rational(1, 4));
  // band 1 weighs 2^-1 and only the locked-to-zero tails count
  CHECK(m.eval({DyadicInterval(dy(1, 2), dy(3, 3)), BitString::parse("00")}) == Rational(1, 16));
  CHECK(m.eval({DyadicInterval(dy(1, 2), dy(3, 3)), BitString::parse("10")}) == Rational(1, 16));
  CHECK(m.eval({DyadicInterval(dy(1, 2), dy(3, 3)), BitString::parse("01")}) == Rational(0));
  CHECK(m.eval({DyadicInterval(dy(1, 2), dy(3, 3)), BitString::parse("11")}) == Rational(0));
  // at or above a_n the measure is the plain product
  CHECK(m.eval({DyadicInterval(dy(1, 1), Dyadic(1)), BitString::parse("1")}) == Rational(1, 4));
}

TEST_CASE("eval agrees with the band-walk oracle") {
  auto alphas = geo_quarter();
  const StripMeasure m(alphas);
  DetRng rng(0xfeedbeef);
  for (int trial = 0; trial < 400; ++trial) {
    const Rect r = random_rect(rng, 8);
    CAPTURE(r.str());
    CHECK(m.eval(r) == oracle_eval(*alphas, r));
  }
}

TEST_CASE("eval is additive in both coordinates") {
  const StripMeasure m(geo_quarter());
  DetRng rng(0x5eed);
  for (int trial = 0; trial < 200; ++trial) {
    const Rect r = random_rect(rng, 6);
    // split the cylinder into its two children
    const Rational whole = m.eval(r);
    const Rational c0 = m.eval({r.interval, r.cyl.extended(0)});
    const Rational c1 = m.eval({r.interval, r.cyl.extended(1)});
    CHECK(whole == c0 + c1);
    // split the interval at its midpoint when it is representable
    const Dyadic mid = (r.interval.lo() + r.interval.hi()).mul_pow2(-1);
    const Rational l = m.eval({DyadicInterval(r.interval.lo(), mid), r.cyl});
    const Rational rr = m.eval({DyadicInterval(mid, r.interval.hi()), r.cyl});
    CHECK(whole == l + rr);
  }
}

TEST_CASE("first marginal is Lebesgue") {
  const StripMeasure m(geo_quarter());
  // interval mass summed over every cylinder of a fixed depth equals length
  for (unsigned depth = 0; depth <= 5; ++depth) {
    Rational total = 0;
    for (std::uint64_t bits = 0; bits < (1ull << depth); ++bits) {
      BitString y;
      for (unsigned i = 0; i < depth; ++i) y.append(static_cast<int>((bits >> (depth - 1 - i)) & 1));
      total += m.eval({DyadicInterval(dy(3, 4), dy(11, 4)), y});
    }
    CHECK(total == Rational(1, 2));
  }
}

TEST_CASE("conditional matches the closed form on prefixes ending in 1") {
  const StripMeasure m(geo_quarter());
  const ConditionalReport r1 = m.conditional(DyadicInterval(dy(1, 1), Dyadic(1)),
                                             BitString::parse("1"));
  CHECK(r1.ratio == Rational(2, 3));
  CHECK(r1.predicted == Rational(2, 3));
  CHECK(r1.exact_match());
  CHECK(r1.depth == 1);

  const ConditionalReport r2 = m.conditional(DyadicInterval(dy(1, 1), dy(3, 2)),
                                             BitString::parse("1"));
  CHECK(r2.ratio == Rational(1, 3));
  CHECK(r2.exact_match());

  const ConditionalReport r3 = m.conditional(DyadicInterval(dy(1, 2), Dyadic(1)),
                                             BitString::parse("01"));
  CHECK(r3.ratio == Rational(1));
  CHECK(r3.exact_match());

  // a prefix locked to zeros still feels the bands, so the closed form is off
  const ConditionalReport r4 = m.conditional(DyadicInterval(Dyadic(), dy(1, 2)),
                                             BitString::parse("0"));
  CHECK(r4.ratio == Rational(2, 5));
  CHECK(r4.predicted == Rational(0));
  CHECK(!r4.exact_match());
}

TEST_CASE("closed-form identity holds for every short prefix ending in 1") {
  const StripMeasure m(geo_quarter());
  DetRng rng(0xabc);
  for (std::uint64_t bits = 0; bits < (1u << 6); ++bits)
    for (unsigned len = 1; len <= 6; ++len) {
      if (bits >= (1ull << len)) continue;
      BitString y;
      for (unsigned i = 0; i < len; ++i) y.append(static_cast<int>((bits >> (len - 1 - i)) & 1));
      if (y.bit(len - 1) != 1) continue;
      const std::uint64_t a = rng.below(31), b = a + 1 + rng.below(32 - a);
      const ConditionalReport rep =
          m.conditional(DyadicInterval(Dyadic(Int(a), 5), Dyadic(Int(b), 5)), y);
      CHECK(rep.exact_match());
    }
}

TEST_CASE("cumulative band mass telescopes to the next term") {
  auto alphas = geo_quarter();
  const StripMeasure m(alphas);
  CHECK(m.atom_mass_cumulative(0) == alphas->at(1).to_rational());
  CHECK(m.atom_mass_cumulative(1) == alphas->at(2).to_rational());
  CHECK(m.atom_mass_cumulative(2) == alphas->at(3).to_rational());
  CHECK(m.atom_mass_cumulative(9) == alphas->at(10).to_rational());
}

TEST_CASE("works over an explicit list too") {
  auto alphas = std::make_shared<AlphaSequence>(
      GeneratorSpec::explicit_list({dy(1, 3), dy(1, 2), dy(5, 3), dy(11, 4)}));
  const StripMeasure m(alphas);
  CHECK(m.marginal(BitString()) == Rational(1));
  DetRng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Rect r = random_rect(rng, 4);
    CHECK(m.eval(r) == oracle_eval(*alphas, r));
  }
  // a cylinder deeper than the list is long raises the source error
  CHECK_THROWS_AS(m.marginal(BitString::parse("00000")), GeneratorExhausted);
}
