// SPDX-License-Identifier: Apache-2.0
#include "cantorlab/pwl.hpp"

#include <stdexcept>

namespace cantorlab {

PwlDensity::PwlDensity(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw std::invalid_argument("density needs at least two nodes");
  if (!nodes_.front().x.is_zero() || nodes_.back().x != Dyadic(1))
    throw std::invalid_argument("density nodes must run from 0 to 1");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i - 1].x < nodes_[i].x))
      throw std::invalid_argument("density nodes must be strictly increasing");
}

Rational PwlDensity::lipschitz() const {
  Rational best = 0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    Rational slope =
        (nodes_[i].y - nodes_[i - 1].y) / (nodes_[i].x - nodes_[i - 1].x).to_rational();
    if (slope < 0) slope = -slope;
    if (best < slope) best = slope;
  }
  return best;
}

Rational PwlDensity::mean() const { return pwl_integral(*this, Dyadic(0), Dyadic(1)); }

const PwlDensity& density_f0() {
  static const PwlDensity f({{Dyadic(0), 2},
                             {Dyadic(Int(1), 2), 0},
                             {Dyadic(Int(1), 1), 0},
                             {Dyadic(Int(3), 2), 2},
                             {Dyadic(1), 2}});
  return f;
}

const PwlDensity& density_f1() {
  static const PwlDensity f({{Dyadic(0), 2},
                             {Dyadic(Int(1), 2), 2},
                             {Dyadic(Int(1), 1), 0},
                             {Dyadic(Int(3), 2), 0},
                             {Dyadic(1), 2}});
  return f;
}

Rational pwl_eval(const PwlDensity& f, const Dyadic& x) {
  const auto& nodes = f.nodes();
  if (x.sign() < 0 || Dyadic(1) < x)
    throw std::invalid_argument("density evaluated outside [0,1] at " + x.frac_str());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (x < nodes[i].x || (i + 1 == nodes.size() && x == nodes[i].x)) {
      const auto& a = nodes[i - 1];
      const auto& b = nodes[i];
      return a.y + (b.y - a.y) * (x - a.x).to_rational() / (b.x - a.x).to_rational();
    }
  }
  throw std::logic_error("unreachable: node list covers [0,1]");
}

Rational pwl_integral(const PwlDensity& f, const Dyadic& lo, const Dyadic& hi) {
  if (lo.sign() < 0 || Dyadic(1) < hi || hi < lo)
    throw std::invalid_argument("integral bounds must satisfy 0 <= lo <= hi <= 1");
  const auto& nodes = f.nodes();
  Rational total = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const Dyadic a = max(lo, nodes[i - 1].x);
    const Dyadic b = min(hi, nodes[i].x);
    if (!(a < b)) continue;
    // exact trapezoid over [a,b]; f is linear there
    total += (b - a).to_rational() * (pwl_eval(f, a) + pwl_eval(f, b)) / 2;
  }
  return total;
}

Rational density_integral(const PwlDensity& f, unsigned t, const BitString& cyl) {
  const std::size_t len = cyl.size();
  if (len <= t) return f.mean() * pow2_rat(-static_cast<long>(len));
  const Dyadic u = cyl.tail_dyadic(t);
  const Dyadic v = u + Dyadic(Int(1), static_cast<unsigned>(len - t));
  return pwl_integral(f, u, v) * pow2_rat(-static_cast<long>(t));
}

}  // namespace cantorlab
