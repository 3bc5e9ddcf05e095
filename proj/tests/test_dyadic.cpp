// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "cantorlab/dyadic.hpp"
#include "cantorlab/errors.hpp"
#include "cantorlab/rational.hpp"

using namespace cantorlab;

TEST_CASE("dyadic canonical form") {
  // 4/2^3 reduces to 1/2^1
  Dyadic d(Int(4), 3);
  CHECK(d.num() == 1);
  CHECK(d.exp() == 1);

  Dyadic z(Int(0), 7);
  CHECK(z.is_zero());
  CHECK(z.exp() == 0);

  Dyadic neg(Int(-6), 4);
  CHECK(neg.num() == -3);
  CHECK(neg.exp() == 3);

  CHECK(Dyadic(5).num() == 5);
  CHECK(Dyadic(5).exp() == 0);
}

TEST_CASE("dyadic arithmetic") {
  const Dyadic half(Int(1), 1);
  const Dyadic quarter(Int(1), 2);
  const Dyadic three_q(Int(3), 2);

  CHECK(half + quarter == three_q);
  CHECK(three_q - half == quarter);
  CHECK(half * half == quarter);
  CHECK(-half + half == Dyadic());
  CHECK(half.mul_pow2(-1) == quarter);
  CHECK(quarter.mul_pow2(2) == Dyadic(1));

  // mixed signs and cancellation down to zero
  CHECK((three_q - quarter - half).is_zero());
  CHECK((quarter - three_q).sign() < 0);
}

TEST_CASE("dyadic ordering") {
  const Dyadic a(Int(3), 3);   // 3/8
  const Dyadic b(Int(1), 1);   // 1/2
  const Dyadic c(Int(7), 4);   // 7/16
  CHECK(a < c);
  CHECK(c < b);
  CHECK(a <= a);
  CHECK(b > c);
  CHECK(b >= b);
  CHECK(a != b);
  CHECK(min(a, b) == a);
  CHECK(max(a, c) == c);
}

TEST_CASE("dyadic floor and frac") {
  const Dyadic v = Dyadic(2) + Dyadic(Int(5), 3);  // 21/8
  CHECK(v.floor() == 2);
  CHECK(v.frac() == Dyadic(Int(5), 3));
  CHECK(Dyadic(3).frac().is_zero());
}

TEST_CASE("dyadic to rational round trip") {
  const Dyadic v(Int(11), 5);
  const Rational r = v.to_rational();
  CHECK(boost::multiprecision::numerator(r) == 11);
  CHECK(boost::multiprecision::denominator(r) == 32);
}

TEST_CASE("parse_dyadic forms") {
  CHECK(parse_dyadic("3/2^4") == Dyadic(Int(3), 4));
  CHECK(parse_dyadic("5/8") == Dyadic(Int(5), 3));
  CHECK(parse_dyadic("1") == Dyadic(1));
  CHECK(parse_dyadic("0") == Dyadic());
  CHECK(parse_dyadic("0/2^9").is_zero());

  CHECK_THROWS_AS(parse_dyadic("1/3"), ParseError);
  CHECK_THROWS_AS(parse_dyadic("1/6"), ParseError);
  CHECK_THROWS_AS(parse_dyadic(""), ParseError);
  CHECK_THROWS_AS(parse_dyadic("x/2^3"), ParseError);
  CHECK_THROWS_AS(parse_dyadic("1/2^"), ParseError);
  CHECK_THROWS_AS(parse_dyadic("1/0"), ParseError);
}

TEST_CASE("dyadic and rational strings") {
  CHECK(Dyadic(Int(3), 2).str() == "3/2^2");
  CHECK(Dyadic(Int(3), 2).frac_str() == "3/4");
  CHECK(Dyadic(2).frac_str() == "2");
  CHECK(rat_str(Rational(3, 4)) == "3/4");
  CHECK(rat_str(Rational(5, 1)) == "5");

  CHECK(rat_decimal(Rational(1, 4)) == "0.250000000000");
  CHECK(rat_decimal(Rational(1, 3)) == "0.333333333333");
  CHECK(rat_decimal(Rational(0)) == "0.000000000000");
  CHECK(rat_decimal(Rational(19, 8)) == "2.375000000000");
  CHECK(rat_decimal(Rational(-1, 2)) == "-0.500000000000");
}

TEST_CASE("parse_dyadic_rational accepts the dyadic grammar") {
  CHECK(parse_dyadic_rational("1/2^20") == Rational(1, 1048576));
  CHECK_THROWS_AS(parse_dyadic_rational("2/6"), ParseError);
}
