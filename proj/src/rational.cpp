// SPDX-License-Identifier: Apache-2.0
#include "cantorlab/rational.hpp"

#include <sstream>

namespace cantorlab {

std::string rat_str(const Rational& r) {
  std::ostringstream os;
  if (denominator(r) == 1)
    os << numerator(r);
  else
    os << numerator(r) << "/" << denominator(r);
  return os.str();
}

std::string rat_decimal(const Rational& r, unsigned places) {
  Int num = numerator(r);
  const Int den = denominator(r);
  std::ostringstream os;
  if (num < 0) {
    os << "-";
    num = -num;
  }
  os << (num / den) << ".";
  Int rem = num % den;
  std::string digits;
  digits.reserve(places);
  for (unsigned i = 0; i < places; ++i) {
    rem *= 10;
    digits += static_cast<char>('0' + static_cast<int>(rem / den));
    rem %= den;
  }
  os << digits;
  return os.str();
}

Rational parse_dyadic_rational(std::string_view text) { return parse_dyadic(text).to_rational(); }

}  // namespace cantorlab
