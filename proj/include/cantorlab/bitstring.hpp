// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "cantorlab/dyadic.hpp"

namespace cantorlab {

// Finite word over {0,1}; the empty word denotes the whole space.
class BitString {
 public:
  BitString() = default;
  static BitString parse(std::string_view s);  // ParseError on anything but 0/1

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int bit(std::size_t i) const { return bits_[i] - '0'; }

  void append(int b) { bits_ += static_cast<char>('0' + b); }
  BitString extended(int b) const;
  BitString prefix(std::size_t n) const;

  // any bit set at position >= from (0-based)?
  bool has_one_from(std::size_t from) const;

  // integer value of the word read as a binary numeral ("" -> 0)
  Int value() const;
  // 0.b_{from+1} b_{from+2} ... as an exact dyadic ("tail after `from` bits")
  Dyadic tail_dyadic(std::size_t from) const;

  const std::string& str() const { return bits_; }
  // "(empty)" for the empty word, otherwise the raw bits
  std::string display() const { return bits_.empty() ? "(empty)" : bits_; }

  bool operator==(const BitString& o) const { return bits_ == o.bits_; }
  bool operator!=(const BitString& o) const { return bits_ != o.bits_; }
  bool operator<(const BitString& o) const { return bits_ < o.bits_; }

 private:
  std::string bits_;
};

}  // namespace cantorlab
