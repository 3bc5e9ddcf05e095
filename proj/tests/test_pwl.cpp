// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "cantorlab/pwl.hpp"
#include "cantorlab/rng.hpp"

using namespace cantorlab;

namespace {

Dyadic dy(long num, unsigned exp) { return Dyadic(Int(num), exp); }

// midpoint rule is exact on linear pieces, giving a second route to the
// integral that never forms a trapezoid
Rational oracle_integral(const PwlDensity& f, const Dyadic& lo, const Dyadic& hi) {
  Rational total = 0;
  const auto& nodes = f.nodes();
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const Dyadic a = max(lo, nodes[i - 1].x);
    const Dyadic b = min(hi, nodes[i].x);
    if (!(a < b)) continue;
    total += (b - a).to_rational() * pwl_eval(f, (a + b).mul_pow2(-1));
  }
  return total;
}

}  // namespace

TEST_CASE("bump density point values") {
  const PwlDensity& f = density_f0();
  CHECK(pwl_eval(f, Dyadic()) == Rational(2));
  CHECK(pwl_eval(f, dy(1, 3)) == Rational(1));
  CHECK(pwl_eval(f, dy(1, 2)) == Rational(0));
  CHECK(pwl_eval(f, dy(3, 3)) == Rational(0));
  CHECK(pwl_eval(f, dy(1, 1)) == Rational(0));
  CHECK(pwl_eval(f, dy(5, 3)) == Rational(1));
  CHECK(pwl_eval(f, dy(3, 2)) == Rational(2));
  CHECK(pwl_eval(f, dy(7, 3)) == Rational(2));
  CHECK(pwl_eval(f, Dyadic(1)) == Rational(2));
  CHECK_THROWS_AS(pwl_eval(f, dy(9, 3)), std::invalid_argument);
}

TEST_CASE("both densities have mean one, slope eight, range in [0,2]") {
  for (const PwlDensity* f : {&density_f0(), &density_f1()}) {
    CHECK(f->mean() == Rational(1));
    CHECK(f->lipschitz() == Rational(8));
    for (long k = 0; k <= 256; ++k) {
      const Rational y = pwl_eval(*f, Dyadic(Int(k), 8));
      CHECK(y >= 0);
      CHECK(y <= 2);
    }
  }
}

TEST_CASE("second density is the first shifted by a quarter") {
  for (long k = 0; k <= 256; ++k) {
    const Dyadic x(Int(k), 8);
    const Dyadic shifted = (x + dy(3, 2)).frac();
    const Dyadic arg = (k == 256) ? dy(3, 2) : shifted;  // x = 1 wraps to 3/4
    CHECK(pwl_eval(density_f1(), x) == pwl_eval(density_f0(), arg));
  }
}

TEST_CASE("at every point at least one density is extreme") {
  for (long k = 0; k <= 256; ++k) {
    const Dyadic x(Int(k), 8);
    const Rational y0 = pwl_eval(density_f0(), x);
    const Rational y1 = pwl_eval(density_f1(), x);
    const bool extreme0 = y0 == 0 || y0 == 2;
    const bool extreme1 = y1 == 0 || y1 == 2;
    CHECK((extreme0 || extreme1));
  }
}

TEST_CASE("integral pins") {
  const PwlDensity& f = density_f0();
  CHECK(pwl_integral(f, Dyadic(), Dyadic(1)) == Rational(1));
  CHECK(pwl_integral(f, Dyadic(), dy(1, 2)) == Rational(1, 4));
  CHECK(pwl_integral(f, dy(1, 2), dy(1, 1)) == Rational(0));
  CHECK(pwl_integral(f, dy(1, 3), dy(3, 3)) == Rational(1, 16));
  CHECK(pwl_integral(f, dy(1, 1), Dyadic(1)) == Rational(3, 4));
  CHECK(pwl_integral(f, dy(1, 2), dy(1, 2)) == Rational(0));
  CHECK_THROWS_AS(pwl_integral(f, dy(1, 1), dy(1, 2)), std::invalid_argument);
}

TEST_CASE("trapezoid integral agrees with the midpoint oracle") {
  DetRng rng(0x91a);
  for (const PwlDensity* f : {&density_f0(), &density_f1()})
    for (int trial = 0; trial < 200; ++trial) {
      std::uint64_t a = rng.below(128), b = rng.below(128) + 1;
      if (a >= b) {
        std::swap(a, b);
        ++b;
      }
      const Dyadic lo(Int(a), 7), hi(Int(b), 7);
      CHECK(pwl_integral(*f, lo, hi) == oracle_integral(*f, lo, hi));
    }
}

TEST_CASE("node validation") {
  using Node = PwlDensity::Node;
  CHECK_THROWS_AS(PwlDensity({Node{Dyadic(), 1}}), std::invalid_argument);
  CHECK_THROWS_AS(PwlDensity({Node{dy(1, 2), 1}, Node{Dyadic(1), 1}}), std::invalid_argument);
  CHECK_THROWS_AS(PwlDensity({Node{Dyadic(), 1}, Node{dy(1, 1), 1}}), std::invalid_argument);
  CHECK_THROWS_AS(PwlDensity({Node{Dyadic(), 1}, Node{dy(1, 1), 1}, Node{dy(1, 1), 2},
                              Node{Dyadic(1), 1}}),
                  std::invalid_argument);
}

TEST_CASE("cylinder integral of the tail composition") {
  const PwlDensity& f0 = density_f0();
  // cylinder shorter than the shift covers whole periods, leaving the mean
  CHECK(density_integral(f0, 1, BitString::parse("1")) == Rational(1, 2));
  CHECK(density_integral(f0, 2, BitString::parse("01")) == Rational(1, 4));
  CHECK(density_integral(f0, 5, BitString::parse("101")) == Rational(1, 8));
  CHECK(density_integral(f0, 0, BitString()) == Rational(1));
  // longer cylinders land inside one period and see the local shape
  CHECK(density_integral(f0, 1, BitString::parse("10")) == Rational(1, 8));
  CHECK(density_integral(f0, 2, BitString::parse("001")) == Rational(3, 16));
  CHECK(density_integral(f0, 0, BitString::parse("01")) == Rational(0));
  CHECK(density_integral(f0, 0, BitString::parse("11")) == Rational(1, 2));
  CHECK(density_integral(f0, 0, BitString::parse("00")) == Rational(1, 4));
}

TEST_CASE("cylinder integral is additive over children") {
  DetRng rng(0x44);
  for (const PwlDensity* f : {&density_f0(), &density_f1()})
    for (unsigned t = 0; t <= 4; ++t)
      for (int trial = 0; trial < 60; ++trial) {
        const std::size_t depth = rng.below(6);
        BitString y;
        for (std::size_t i = 0; i < depth; ++i) y.append(static_cast<int>(rng.bit()));
        const Rational whole = density_integral(*f, t, y);
        CHECK(whole == density_integral(*f, t, y.extended(0)) +
                           density_integral(*f, t, y.extended(1)));
      }
}
