// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantorlab/bitstring.hpp"
#include "cantorlab/ce_instance.hpp"
#include "cantorlab/dyadic.hpp"
#include "cantorlab/pwl.hpp"
#include "cantorlab/rng.hpp"

namespace cantorlab {

/*
 * Supplies one bit after another of a fixed (conceptually infinite) second
 * coordinate.  Certification deepens its view of the sequence on demand; a
 * finite source eventually runs dry and certification reports that honestly
 * instead of inventing bits.
 */
class PrefixSource {
 public:
  virtual ~PrefixSource() = default;
  virtual std::optional<int> bit(std::size_t i) = 0;  // 0-based
  virtual std::string describe() const = 0;
  BitString take(std::size_t n);  // PrecisionUnreachable when the source is short
};

// head bits, then the fill bit forever (an eventually constant tail)
class PaddedPrefix : public PrefixSource {
 public:
  explicit PaddedPrefix(BitString head, int fill = 0)
      : head_(std::move(head)), fill_(fill) {}
  std::optional<int> bit(std::size_t i) override {
    return i < head_.size() ? head_.bit(i) : fill_;
  }
  std::string describe() const override {
    return "bits " + head_.display() + " then " + std::to_string(fill_) + "-tail";
  }

 private:
  BitString head_;
  int fill_;
};

// exactly these bits, nothing after
class FinitePrefix : public PrefixSource {
 public:
  explicit FinitePrefix(BitString bits) : bits_(std::move(bits)) {}
  std::optional<int> bit(std::size_t i) override {
    if (i < bits_.size()) return bits_.bit(i);
    return std::nullopt;
  }
  std::string describe() const override {
    return "finite bits " + bits_.display();
  }

 private:
  BitString bits_;
};

// fair-coin bits, remembered so every depth sees the same sequence
class SampledPrefix : public PrefixSource {
 public:
  explicit SampledPrefix(std::uint64_t seed) : seed_(seed), rng_(seed) {}
  std::optional<int> bit(std::size_t i) override {
    while (drawn_.size() <= i) drawn_.append(rng_.bit());
    return drawn_.bit(i);
  }
  std::string describe() const override { return "sampled stream, seed " + std::to_string(seed_); }
  const BitString& drawn() const { return drawn_; }

 private:
  std::uint64_t seed_;
  DetRng rng_;
  BitString drawn_;
};

// exact enclosure of a conditional value: lower <= value <= upper
struct CertifiedValue {
  Rational lower, upper;
  std::size_t depth;       // prefix bits the enclosure is based on
  std::size_t truncation;  // index cutoff used for the series tail
  Rational width() const { return upper - lower; }
  bool contains(const Rational& v) const { return lower <= v && v <= upper; }
};

/*
 * Discrete-times-continuous measure on N x 2^N encoding a finite enumeration
 * (a desk-scale c.e. set).  Plain scheme: index n carries raw weight 2^-n,
 * spread uniformly over the cylinder side when n never enters the set and
 * with density f0 applied to the tail after the enumeration stage t_n when
 * it does.  Paired scheme: slots 2n and 2n+1 carry weights 2^-2n, 2^-2n-1
 * with densities f0 and f1, which is what makes membership decodable from
 * conditional values alone.  Raw total mass is 2 either way; the global
 * normalization factor 1/2 is recorded, not baked into rect values, so the
 * printed numbers match the unnormalized construction.
 */
class CeMeasure {
 public:
  explicit CeMeasure(CeInstance instance, bool paired = true);

  const CeInstance& instance() const { return inst_; }
  bool paired() const { return paired_; }
  Rational normalization() const { return Rational(1, 2); }
  // index of the slot (pair-first slot when paired) pinned by the promised
  // nonmember; its term is exactly 2^-baseline_slot, which floors the
  // denominator of every conditional
  std::size_t baseline_slot() const;

  // raw mass of {k} x [cyl]
  Rational rect_mass(std::size_t k, const BitString& cyl) const;
  // same quantity computed as a stage-|cyl| observer would: membership
  // counts only when enumerated within |cyl| stages.  Provably equal to
  // rect_mass everywhere; kept as a separate honest code path.
  Rational rect_mass_staged(std::size_t k, const BitString& cyl) const;
  // raw mass of N x [cyl] (closed-form tail, no index truncation)
  Rational marginal_mass(const BitString& cyl) const;

  // exact limits along prefix followed by a constant fill-bit tail
  Rational limit_density(std::size_t k, const BitString& prefix, int fill = 0) const;
  Rational limit_marginal(const BitString& prefix, int fill = 0) const;
  Rational limit_conditional(std::size_t k, const BitString& prefix, int fill = 0) const;

  /*
   * Certified enclosure of the conditional probability of index k given the
   * first `x.size()` bits of the second coordinate.  Sound for every
   * continuation of x: the exact cylinder ratio at any deeper finite prefix
   * and the limit along any infinite extension all lie inside.
   */
  CertifiedValue conditional_at_depth(std::size_t k, const BitString& x,
                                      std::size_t truncation) const;
  // deepen through the source until the enclosure is no wider than eps
  CertifiedValue conditional(std::size_t k, PrefixSource& src, const Rational& eps) const;
  std::size_t truncation_for(std::size_t k, const Rational& eps) const;

 private:
  struct Slot {
    const CeInstance::Member* member;  // null when the index never enters
    const PwlDensity* density;
    Rational weight;  // 2^-k
  };
  Slot slot(std::size_t k) const;
  std::pair<Rational, Rational> term_bounds(std::size_t k, const BitString& x) const;

  CeInstance inst_;
  bool paired_;
  Rational member_weight_;  // raw weight sitting on enumerated indices
};

// children of [y] at depths 1..max_depth partition it; true iff rect_mass
// telescopes exactly for this index over every one of those partitions
bool consistency_check(const CeMeasure& m, std::size_t k, const BitString& y,
                       std::size_t max_depth = 4);

// draw `depth` bits of the second coordinate under the normalized marginal
BitString sample_marginal(const CeMeasure& m, DetRng& rng, std::size_t depth);
BitString sample_marginal(const CeMeasure& m, std::uint64_t seed, std::size_t depth);

// exact Bernoulli(p) from fair bits, 0 <= p <= 1
bool bernoulli_exact(DetRng& rng, Rational p);

struct DecodeResult {
  unsigned index;
  bool member;
  std::size_t queries;  // oracle calls spent
};

// the only view a decoder gets of the measure: certified conditional values
// of requested precision, nothing else
using ConditionalOracle = std::function<CertifiedValue(std::size_t k, const Rational& eps)>;

/*
 * Decide whether `n` was ever enumerated, looking only at certified
 * conditional values of the paired measure along one second coordinate.
 * Against the baseline of the promised nonmember m0, a never-enumerated
 * index shows weight-normalized ratio 1 on both of its slots, while an
 * enumerated one pushes at least one slot's ratio to 0 or 2; enclosures of
 * width 1/2 on the ratios therefore decide membership exactly, via the
 * thresholds 3/4 and 5/4.
 */
DecodeResult decode_membership(const ConditionalOracle& oracle, unsigned n, unsigned m0);
// convenience wrapper binding the oracle to a measure and one prefix source
DecodeResult decode_membership(const CeMeasure& m, unsigned n, PrefixSource& src);

}  // namespace cantorlab
