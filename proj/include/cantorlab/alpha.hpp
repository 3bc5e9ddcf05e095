// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantorlab/ce_instance.hpp"
#include "cantorlab/dyadic.hpp"

namespace cantorlab {

enum class GeneratorKind { ExplicitList, Specker, Geometric };

/*
 * Recipe for a strictly increasing dyadic sequence inside (0,1).
 *
 *   explicit_list  the terms verbatim
 *   specker        a_n = sum of 2^-(i+2) over enumerated indices i with
 *                  stage <= n; converges to a limit that is only as
 *                  knowable as the enumerated set itself
 *   geometric      partial sums a_n = start * (1 + r + ... + r^{n-1});
 *                  limit start/(1-r) is known in closed form
 */
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::ExplicitList;
  std::vector<Dyadic> terms;  // explicit_list
  CeInstance instance;        // specker
  Dyadic start, ratio;        // geometric

  static GeneratorSpec explicit_list(std::vector<Dyadic> terms);
  static GeneratorSpec specker(CeInstance instance);
  static GeneratorSpec geometric(Dyadic start, Dyadic ratio);

  std::string describe() const;
};

/*
 * Lazily extended view a_1 < a_2 < ... of a GeneratorSpec.  Terms are cached
 * on first use; extension enforces strict monotonicity inside (0,1) at the
 * moment a term is produced (MonotonicityViolation), and a finite source that
 * cannot go further raises GeneratorExhausted.  at0 adds the convention
 * a_0 = 0 used by every strip computation.  Safe for concurrent readers.
 */
class AlphaSequence {
 public:
  explicit AlphaSequence(GeneratorSpec spec);

  Dyadic at(std::size_t n) const;   // n >= 1
  Dyadic at0(std::size_t n) const;  // n >= 0, at0(0) == 0

  // exact bracket after n terms: a_n <= limit <= upper; upper is absent for
  // an explicit list, which promises nothing beyond its last term
  std::pair<Dyadic, std::optional<Rational>> limit_bounds(std::size_t n) const;

  // how many terms this source can ever produce
  std::size_t available_terms() const;
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  const GeneratorSpec& spec() const { return spec_; }

 private:
  void extend_to(std::size_t n) const;
  Dyadic next_term(std::size_t n, const Dyadic& prev) const;

  GeneratorSpec spec_;
  mutable std::vector<Dyadic> cache_;
  mutable std::mutex mu_;
};

}  // namespace cantorlab
