// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace cantorlab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Int pow2_int(std::size_t k);
Rational pow2_rat(long k);  // 2^k, k may be negative

/*
 * Exact binary rational  num / 2^exp  kept in canonical form:
 * num is odd or zero, and exp == 0 when num == 0.  Canonical form makes
 * operator== a field-wise comparison and keeps numbers small under the
 * halving/doubling that dominates this code base.
 */
class Dyadic {
 public:
  Dyadic() : num_(0), exp_(0) {}
  explicit Dyadic(long value) : num_(value), exp_(0) {}
  Dyadic(Int num, unsigned exp) : num_(std::move(num)), exp_(exp) { canonicalize(); }

  const Int& num() const { return num_; }
  unsigned exp() const { return exp_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;
  Dyadic operator-() const { return Dyadic(-num_, exp_); }

  // value * 2^s (exact for either sign of s)
  Dyadic mul_pow2(long s) const;

  bool operator==(const Dyadic& o) const { return num_ == o.num_ && exp_ == o.exp_; }
  bool operator!=(const Dyadic& o) const { return !(*this == o); }
  bool operator<(const Dyadic& o) const;
  bool operator<=(const Dyadic& o) const { return !(o < *this); }
  bool operator>(const Dyadic& o) const { return o < *this; }
  bool operator>=(const Dyadic& o) const { return !(*this < o); }

  Int floor() const;     // requires num_ >= 0
  Dyadic frac() const;   // this - floor(), requires num_ >= 0

  Rational to_rational() const;

  // canonical machine form "num/2^exp" (round-trips through parse_dyadic)
  std::string str() const;
  // reduced fraction form "p/q" or plain integer (for human-facing reports)
  std::string frac_str() const;

 private:
  void canonicalize();
  Int num_;
  unsigned exp_;
};

const Dyadic& min(const Dyadic& a, const Dyadic& b);
const Dyadic& max(const Dyadic& a, const Dyadic& b);

/*
 * Accepted forms: "p/2^k", "p/q" with q a positive power of two, or a bare
 * non-negative integer.  Anything else (including q not a power of two)
 * raises ParseError naming the offending token.
 */
Dyadic parse_dyadic(std::string_view text);

}  // namespace cantorlab
