// SPDX-License-Identifier: Apache-2.0
#include "cantorlab/ce.hpp"

#include <set>
#include <stdexcept>

#include "cantorlab/errors.hpp"
#include "cantorlab/rational.hpp"

namespace cantorlab {

void CeInstance::validate() const {
  std::set<unsigned> seen;
  for (const auto& m : members) {
    if (!seen.insert(m.index).second)
      throw ConfigError("index " + std::to_string(m.index) + " enumerated twice");
    if (m.time == 0) throw ConfigError("enumeration stages start at 1");
    if (m.time > horizon)
      throw ConfigError("index " + std::to_string(m.index) + " enumerated at stage " +
                        std::to_string(m.time) + ", beyond horizon " + std::to_string(horizon));
    if (m.index == nonmember)
      throw ConfigError("index " + std::to_string(m.index) +
                        " is enumerated but promised to stay out");
    if (m.index > 4096) throw ConfigError("index " + std::to_string(m.index) + " too large");
  }
  if (horizon == 0) throw ConfigError("horizon must be positive");
}

const CeInstance::Member* CeInstance::find(unsigned index) const {
  for (const auto& m : members)
    if (m.index == index) return &m;
  return nullptr;
}

unsigned CeInstance::max_time() const {
  unsigned t = 0;
  for (const auto& m : members) t = std::max(t, m.time);
  return t;
}

unsigned CeInstance::max_member_index() const {
  unsigned i = 0;
  for (const auto& m : members) i = std::max(i, m.index);
  return i;
}

BitString PrefixSource::take(std::size_t n) {
  BitString out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = bit(i);
    if (!b) throw PrecisionUnreachable("prefix source exhausted at bit " + std::to_string(i));
    out.append(*b);
  }
  return out;
}

CeMeasure::CeMeasure(CeInstance instance, bool paired)
    : inst_(std::move(instance)), paired_(paired) {
  inst_.validate();
  member_weight_ = 0;
  for (const auto& m : inst_.members)
    member_weight_ += paired_ ? Rational(3) * pow2_rat(-2L * long(m.index) - 1)
                              : pow2_rat(-long(m.index));
}

std::size_t CeMeasure::baseline_slot() const {
  return (paired_ ? 2 : 1) * static_cast<std::size_t>(inst_.nonmember);
}

CeMeasure::Slot CeMeasure::slot(std::size_t k) const {
  const unsigned n = static_cast<unsigned>(paired_ ? k / 2 : k);
  const PwlDensity& f = (paired_ && k % 2) ? density_f1() : density_f0();
  return {inst_.find(n), &f, pow2_rat(-static_cast<long>(k))};
}

Rational CeMeasure::rect_mass(std::size_t k, const BitString& cyl) const {
  const Slot s = slot(k);
  if (!s.member) return s.weight * pow2_rat(-static_cast<long>(cyl.size()));
  return s.weight * density_integral(*s.density, s.member->time, cyl);
}

Rational CeMeasure::rect_mass_staged(std::size_t k, const BitString& cyl) const {
  const Slot s = slot(k);
  if (!s.member || s.member->time > cyl.size())
    return s.weight * pow2_rat(-static_cast<long>(cyl.size()));
  return s.weight * density_integral(*s.density, s.member->time, cyl);
}

Rational CeMeasure::marginal_mass(const BitString& cyl) const {
  Rational total = (Rational(2) - member_weight_) * pow2_rat(-static_cast<long>(cyl.size()));
  for (const auto& m : inst_.members) {
    if (paired_) {
      total += pow2_rat(-2L * long(m.index)) * density_integral(density_f0(), m.time, cyl);
      total += pow2_rat(-2L * long(m.index) - 1) * density_integral(density_f1(), m.time, cyl);
    } else {
      total += pow2_rat(-long(m.index)) * density_integral(density_f0(), m.time, cyl);
    }
  }
  return total;
}

namespace {

// tail 0.p_{t+1} p_{t+2} ... of prefix followed by a constant fill tail
Dyadic padded_tail(const BitString& prefix, unsigned t, int fill) {
  Dyadic u = prefix.tail_dyadic(t);
  if (fill == 0) return u;
  if (prefix.size() <= t) return Dyadic(1);  // 0.111... = 1
  return u + Dyadic(Int(1), static_cast<unsigned>(prefix.size() - t));
}

}  // namespace

Rational CeMeasure::limit_density(std::size_t k, const BitString& prefix, int fill) const {
  const Slot s = slot(k);
  if (!s.member) return s.weight;
  return s.weight * pwl_eval(*s.density, padded_tail(prefix, s.member->time, fill));
}

Rational CeMeasure::limit_marginal(const BitString& prefix, int fill) const {
  Rational total = Rational(2) - member_weight_;
  for (const auto& m : inst_.members) {
    const Dyadic u = padded_tail(prefix, m.time, fill);
    if (paired_) {
      total += pow2_rat(-2L * long(m.index)) * pwl_eval(density_f0(), u);
      total += pow2_rat(-2L * long(m.index) - 1) * pwl_eval(density_f1(), u);
    } else {
      total += pow2_rat(-long(m.index)) * pwl_eval(density_f0(), u);
    }
  }
  return total;
}

Rational CeMeasure::limit_conditional(std::size_t k, const BitString& prefix, int fill) const {
  return limit_density(k, prefix, fill) / limit_marginal(prefix, fill);
}

/*
 * Average-density enclosure of index k's term over the cylinder [x]: the
 * exact value of rect_mass(k, [x']) / 2^-|x'| for every extension x' of x,
 * and its pointwise limit along any infinite extension, lie inside.
 * Nonmembers are flat, hence exact; an enumerated index is pinned by the
 * slope bound of its density applied to the still-unseen part of the tail.
 */
std::pair<Rational, Rational> CeMeasure::term_bounds(std::size_t k, const BitString& x) const {
  const Slot s = slot(k);
  if (!s.member) return {s.weight, s.weight};
  if (x.size() < s.member->time) return {Rational(0), s.weight * 2};
  const Rational fu = pwl_eval(*s.density, x.tail_dyadic(s.member->time));
  const Rational delta =
      Rational(8) * pow2_rat(-static_cast<long>(x.size() - s.member->time));
  Rational lo = fu - delta, hi = fu + delta;
  if (lo < 0) lo = 0;
  if (Rational(2) < hi) hi = 2;
  return {s.weight * lo, s.weight * hi};
}

std::size_t CeMeasure::truncation_for(std::size_t k, const Rational& eps) const {
  const std::size_t base = baseline_slot();
  // the series tail past J is at most 4 * 2^-J in density units, and the
  // denominator is at least the promised nonmember's exact 2^-base; keep the
  // tail's relative effect under eps/8
  std::size_t J = base + 6;
  while (Rational(32) * pow2_rat(static_cast<long>(base)) > eps * pow2_rat(static_cast<long>(J)))
    ++J;
  const std::size_t top_member =
      (paired_ ? 2 : 1) * static_cast<std::size_t>(inst_.max_member_index()) + 2;
  return std::max({J, k + 1, top_member, base + 2});
}

CertifiedValue CeMeasure::conditional_at_depth(std::size_t k, const BitString& x,
                                               std::size_t truncation) const {
  const std::size_t J = std::max({truncation, k + 1, baseline_slot() + 2});
  Rational d_lo = 0;
  Rational d_hi = Rational(4) * pow2_rat(-static_cast<long>(J));  // everything past J
  Rational n_lo = 0, n_hi = 0;
  for (std::size_t i = 0; i < J; ++i) {
    const auto [lo, hi] = term_bounds(i, x);
    d_lo += lo;
    d_hi += hi;
    if (i == k) {
      n_lo = lo;
      n_hi = hi;
    }
  }
  Rational lo = n_lo / d_hi;
  Rational hi = n_hi / d_lo;
  if (Rational(1) < hi) hi = 1;
  return {std::move(lo), std::move(hi), x.size(), J};
}

CertifiedValue CeMeasure::conditional(std::size_t k, PrefixSource& src,
                                      const Rational& eps) const {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  const std::size_t J = truncation_for(k, eps);
  std::size_t d = inst_.max_time() + 2;
  for (std::size_t round = 0; round < 64; ++round) {
    const CertifiedValue cv = conditional_at_depth(k, src.take(d), J);
    if (cv.width() <= eps) return cv;
    // width halves per extra bit once the density windows dominate, so jump
    // most of the remaining distance in one go
    std::size_t bits = 2;
    for (Rational q = cv.width() / eps; 1 < q && bits < 4096; q /= 2) ++bits;
    d += bits;
  }
  throw PrecisionUnreachable("conditional enclosure for index " + std::to_string(k) +
                             " still wider than requested at depth " + std::to_string(d));
}

bool consistency_check(const CeMeasure& m, std::size_t k, const BitString& y,
                       std::size_t max_depth) {
  const Rational whole = m.rect_mass(k, y);
  for (std::size_t d = 1; d <= max_depth; ++d) {
    Rational sum = 0;
    const std::uint64_t cells = std::uint64_t{1} << d;
    for (std::uint64_t c = 0; c < cells; ++c) {
      BitString x = y;
      for (std::size_t b = d; b-- > 0;) x.append(static_cast<int>((c >> b) & 1));
      sum += m.rect_mass(k, x);
    }
    if (sum != whole) return false;
  }
  return true;
}

bool bernoulli_exact(DetRng& rng, Rational p) {
  if (p <= 0) return false;
  if (1 <= p) return true;
  for (;;) {
    p *= 2;
    int digit = 0;
    if (1 <= p) {
      digit = 1;
      p -= 1;
    }
    const int u = rng.bit();
    if (u != digit) return u < digit;
    if (p == 0) return false;  // the remaining expansion of p is all zeros
  }
}

BitString sample_marginal(const CeMeasure& m, DetRng& rng, std::size_t depth) {
  BitString x;
  Rational mass = m.marginal_mass(x);
  for (std::size_t i = 0; i < depth; ++i) {
    const Rational mass0 = m.marginal_mass(x.extended(0));
    if (bernoulli_exact(rng, mass0 / mass)) {
      x.append(0);
      mass = mass0;
    } else {
      x.append(1);
      mass -= mass0;  // the sibling's mass, by additivity
    }
  }
  return x;
}

BitString sample_marginal(const CeMeasure& m, std::uint64_t seed, std::size_t depth) {
  DetRng rng(seed);
  return sample_marginal(m, rng, depth);
}

DecodeResult decode_membership(const ConditionalOracle& oracle, unsigned n, unsigned m0) {
  const std::size_t kn = 2 * static_cast<std::size_t>(n);
  const std::size_t k0 = 2 * static_cast<std::size_t>(m0);
  std::size_t queries = 0;
  // the ratio magnifies enclosure widths by about 2^kn * 2^k0, so start at a
  // precision that usually settles matters in one round
  Rational eps = Rational(1, 64) * pow2_rat(-static_cast<long>(kn + k0));
  try {
    for (int round = 0; round < 64; ++round) {
      const CertifiedValue base = oracle(k0, eps);
      ++queries;
      if (base.lower == 0) {  // baseline not yet bounded away from zero
        eps /= 8;
        continue;
      }
      bool member = false;
      bool narrow = true;
      for (int b = 0; b < 2; ++b) {
        const CertifiedValue cv = oracle(kn + b, eps);
        ++queries;
        // weight-normalized ratio against the baseline slot; its limit is
        // the branch density at the tail: 1 when n never enters the set,
        // 0 or 2 on at least one branch when it does
        const Rational scale = pow2_rat(static_cast<long>(kn + b) - static_cast<long>(k0));
        const Rational rlo = scale * cv.lower / base.upper;
        const Rational rhi = scale * cv.upper / base.lower;
        if (Rational(1, 2) < rhi - rlo) narrow = false;
        if (rhi <= Rational(3, 4) || Rational(5, 4) <= rlo) member = true;
      }
      if (member) return {n, true, queries};
      // at ratio width <= 1/2 an enumerated index must have pushed one
      // branch's enclosure clear of 1, so narrowness without exclusion is
      // a proof of non-membership
      if (narrow) return {n, false, queries};
      eps /= 8;
    }
  } catch (const PrecisionUnreachable& e) {
    throw OracleExhausted("decoding index " + std::to_string(n) + ": " + e.what());
  }
  throw OracleExhausted("decoding index " + std::to_string(n) + ": query budget spent");
}

DecodeResult decode_membership(const CeMeasure& m, unsigned n, PrefixSource& src) {
  if (!m.paired())
    throw std::invalid_argument("membership decoding needs the paired scheme");
  const ConditionalOracle oracle = [&](std::size_t k, const Rational& eps) {
    return m.conditional(k, src, eps);
  };
  return decode_membership(oracle, n, m.instance().nonmember);
}

}  // namespace cantorlab
