// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cantorlab/bitstring.hpp"
#include "cantorlab/dyadic.hpp"

namespace cantorlab {

/*
 * Piecewise linear function on [0,1] given by nodes with strictly increasing
 * dyadic abscissae running from 0 to 1.  Evaluation and integration are
 * exact rational arithmetic.
 */
class PwlDensity {
 public:
  struct Node {
    Dyadic x;
    Rational y;
  };

  explicit PwlDensity(std::vector<Node> nodes);

  const std::vector<Node>& nodes() const { return nodes_; }
  Rational lipschitz() const;  // largest |slope|
  Rational mean() const;       // integral over [0,1]

 private:
  std::vector<Node> nodes_;
};

// The two complementary bump densities: f0 vanishes on [1/4,1/2], f1 is f0
// shifted right by 1/4 (mod 1) and vanishes on [1/2,3/4].  Both have mean 1,
// range [0,2], slopes +-8, and at every point at least one of them is 0 or 2.
const PwlDensity& density_f0();
const PwlDensity& density_f1();

Rational pwl_eval(const PwlDensity& f, const Dyadic& x);  // 0 <= x <= 1
Rational pwl_integral(const PwlDensity& f, const Dyadic& lo, const Dyadic& hi);

/*
 * Integral over the cylinder [cyl] of f applied to the tail after bit t,
 * i.e. of beta |-> f(0.b_{t+1} b_{t+2} ...).  The tail map is the map
 * x |-> frac(2^t x) on binary expansions, so the cylinder either covers
 * whole periods (|cyl| <= t) or lands inside a single one.
 */
Rational density_integral(const PwlDensity& f, unsigned t, const BitString& cyl);

}  // namespace cantorlab
