// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "cantorlab/dyadic.hpp"

namespace cantorlab {

// "p/q" reduced, or plain integer when q == 1
std::string rat_str(const Rational& r);

// Decimal expansion truncated toward zero to `places` digits, e.g. 1/3 at 4
// places renders "0.3333".  Never goes through floating point.
std::string rat_decimal(const Rational& r, unsigned places = 12);

// Accepts the dyadic forms of parse_dyadic; used for flags like --eps.
Rational parse_dyadic_rational(std::string_view text);

}  // namespace cantorlab
