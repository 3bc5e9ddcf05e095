// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace cantorlab {

/*
 * Deterministic bit/word source.  Uses the raw mt19937_64 output stream only
 * (never the standard distributions, whose mappings vary across library
 * implementations), so a seed reproduces the same values everywhere.
 */
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t word() { return eng_(); }

  int bit() {
    if (left_ == 0) {
      buf_ = eng_();
      left_ = 64;
    }
    const int b = static_cast<int>(buf_ & 1);
    buf_ >>= 1;
    --left_;
    return b;
  }

  // uniform in [0, n), n >= 1, by rejection on the biased remainder
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    for (;;) {
      const std::uint64_t w = eng_();
      if (w < limit) return w % n;
    }
  }

 private:
  std::mt19937_64 eng_;
  std::uint64_t buf_ = 0;
  int left_ = 0;
};

}  // namespace cantorlab
