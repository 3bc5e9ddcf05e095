// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cantorlab/strip_measure.hpp"

namespace cantorlab {

/*
 * One level of a sequential test: a finite union of rectangles meant to have
 * uniform mass at most 2^-index.  push() keeps the running product mass under
 * the given measure so a caller can stop enumerating the moment the budget
 * is hit.
 */
class TestLevel {
 public:
  TestLevel(std::size_t index, std::vector<Rect> rects, const StripMeasure& m);

  std::size_t index() const { return index_; }
  const std::vector<Rect>& rects() const { return rects_; }
  Rational budget() const { return pow2_rat(-static_cast<long>(index_)); }
  const Rational& strip_mass() const { return strip_mass_; }  // exact running sum
  bool within_budget() const { return strip_mass_ <= budget(); }

  void push(const Rect& r, const StripMeasure& m);

 private:
  std::size_t index_;
  std::vector<Rect> rects_;
  Rational strip_mass_ = 0;
};

struct TrimmedLevel {
  std::vector<std::optional<Rect>> rects;  // slot i trims rects()[i]; nullopt = dropped
  std::size_t kept() const;
};

// Replace i x [y] by (i ∩ [a_{|y|}, 1)) x [y]; nothing is left when the
// interval sits entirely below the cut.
std::optional<Rect> trim_rect(const AlphaSequence& alphas, const Rect& r);
TrimmedLevel trim_level(const AlphaSequence& alphas, const TestLevel& level);

struct RectCheck {
  Rect original;
  std::optional<Rect> trimmed;
  Rational uniform_trimmed;  // 0 when dropped
  Rational strip_original;
  bool dominated;  // uniform(trimmed) <= strip(original)
};

struct ProbeCheck {
  Dyadic probe;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // rects whose cut lies above the probe
  bool consistent = true;   // trimmed and original cover the same slice
};

struct VerificationReport {
  std::vector<RectCheck> rects;
  Rational uniform_total = 0;  // over the trimmed level
  Rational strip_total = 0;    // over the original level
  bool aggregate_dominated = false;
  std::vector<ProbeCheck> probes;
  bool all_pass() const;
};

/*
 * Checks the two properties trimming promises: the trimmed level's uniform
 * mass never exceeds the original level's strip mass (per rectangle and in
 * aggregate), and for every probe point g at or above a rectangle's cut, the
 * vertical slice through g is untouched.  Probes below a rectangle's cut say
 * nothing about it and are counted as skipped.
 */
VerificationReport verify_conditions(const StripMeasure& m, const TestLevel& level,
                                     const TrimmedLevel& trimmed,
                                     const std::vector<Dyadic>& probes);

// One rect per line as "lo hi cyl" (cyl may be "-" or "(empty)"); '#' starts
// a comment.  ParseError carries line numbers.
std::vector<Rect> parse_level_lines(std::istream& in);
std::vector<Rect> load_level_file(const std::string& path);
Rect parse_rect_tokens(const std::string& lo, const std::string& hi, const std::string& cyl);

}  // namespace cantorlab
