// SPDX-License-Identifier: Apache-2.0
#include "cantorlab/dyadic.hpp"

#include <algorithm>
#include <sstream>

#include "cantorlab/errors.hpp"

namespace cantorlab {

Int pow2_int(std::size_t k) { return Int(1) << k; }

Rational pow2_rat(long k) {
  if (k >= 0) return Rational(Int(1) << k);
  return Rational(Int(1), Int(1) << static_cast<std::size_t>(-k));
}

void Dyadic::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  if (exp_ == 0) return;
  const unsigned tz = static_cast<unsigned>(boost::multiprecision::lsb(boost::multiprecision::abs(num_)));
  const unsigned s = std::min(tz, exp_);
  if (s) {
    num_ >>= s;
    exp_ -= s;
  }
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  const unsigned e = std::max(exp_, o.exp_);
  Int n = (num_ << (e - exp_)) + (o.num_ << (e - o.exp_));
  return Dyadic(std::move(n), e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
  const unsigned e = std::max(exp_, o.exp_);
  Int n = (num_ << (e - exp_)) - (o.num_ << (e - o.exp_));
  return Dyadic(std::move(n), e);
}

Dyadic Dyadic::operator*(const Dyadic& o) const { return Dyadic(num_ * o.num_, exp_ + o.exp_); }

Dyadic Dyadic::mul_pow2(long s) const {
  if (num_ == 0) return Dyadic();
  if (s >= 0) {
    const unsigned u = static_cast<unsigned>(s);
    if (exp_ >= u) return Dyadic(num_, exp_ - u);
    return Dyadic(num_ << (u - exp_), 0);
  }
  return Dyadic(num_, exp_ + static_cast<unsigned>(-s));
}

bool Dyadic::operator<(const Dyadic& o) const {
  const unsigned e = std::max(exp_, o.exp_);
  return (num_ << (e - exp_)) < (o.num_ << (e - o.exp_));
}

Int Dyadic::floor() const { return num_ >> exp_; }

Dyadic Dyadic::frac() const { return Dyadic(num_ - (floor() << exp_), exp_); }

Rational Dyadic::to_rational() const { return Rational(num_, Int(1) << exp_); }

std::string Dyadic::str() const {
  std::ostringstream os;
  os << num_ << "/2^" << exp_;
  return os.str();
}

std::string Dyadic::frac_str() const {
  std::ostringstream os;
  if (exp_ == 0)
    os << num_;
  else
    os << num_ << "/" << (Int(1) << exp_);
  return os.str();
}

const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

namespace {

Int parse_int(std::string_view text, std::string_view whole) {
  if (text.empty()) throw ParseError("empty number in '" + std::string(whole) + "'");
  for (char c : text)
    if (c < '0' || c > '9')
      throw ParseError("invalid digit '" + std::string(1, c) + "' in '" + std::string(whole) + "'");
  return Int(std::string(text));
}

}  // namespace

Dyadic parse_dyadic(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Dyadic(parse_int(text, text), 0);
  const Int num = parse_int(text.substr(0, slash), text);
  std::string_view den = text.substr(slash + 1);
  if (den.size() >= 2 && den[0] == '2' && den[1] == '^') {
    const Int k = parse_int(den.substr(2), text);
    if (k > 1u << 20)
      throw ParseError("exponent too large in '" + std::string(text) + "'");
    return Dyadic(num, static_cast<unsigned>(k));
  }
  const Int q = parse_int(den, text);
  if (q <= 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  const unsigned tz = static_cast<unsigned>(boost::multiprecision::lsb(q));
  if ((Int(1) << tz) != q)
    throw ParseError("denominator of '" + std::string(text) + "' is not a power of two");
  return Dyadic(num, tz);
}

}  // namespace cantorlab
