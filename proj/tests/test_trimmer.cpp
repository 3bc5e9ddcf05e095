// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <memory>
#include <sstream>

#include "cantorlab/errors.hpp"
#include "cantorlab/rng.hpp"
#include "cantorlab/trimmer.hpp"

using namespace cantorlab;

namespace {

Dyadic dy(long num, unsigned exp) { return Dyadic(Int(num), exp); }

std::shared_ptr<AlphaSequence> geo_quarter() {
  return std::make_shared<AlphaSequence>(GeneratorSpec::geometric(dy(1, 2), dy(1, 1)));
}

Rect rect(long lon, unsigned loe, long hin, unsigned hie, const std::string& bits) {
  return Rect{DyadicInterval(dy(lon, loe), dy(hin, hie)),
              bits.empty() ? BitString() : BitString::parse(bits)};
}

}  // namespace

TEST_CASE("trim_rect moves the floor to the cut") {
  auto alphas = geo_quarter();

  // entirely below the depth-1 cut: dropped
  CHECK(!trim_rect(*alphas, rect(0, 0, 1, 3, "1")).has_value());
  // straddling the cut: floor raised to a_1 = 1/4
  const auto t = trim_rect(*alphas, rect(0, 0, 1, 1, "1"));
  REQUIRE(t.has_value());
  CHECK(t->interval.lo() == dy(1, 2));
  CHECK(t->interval.hi() == dy(1, 1));
  CHECK(t->cyl == BitString::parse("1"));
  // already above the depth-2 cut a_2 = 3/8: untouched
  const auto u = trim_rect(*alphas, rect(1, 1, 1, 0, "11"));
  REQUIRE(u.has_value());
  CHECK(u->interval == rect(1, 1, 1, 0, "11").interval);
  // depth 0 cuts at 0: untouched
  const auto w = trim_rect(*alphas, rect(0, 0, 1, 0, ""));
  REQUIRE(w.has_value());
  CHECK(w->interval.lo().is_zero());
}

TEST_CASE("trimmed mass equals the above-cut product mass") {
  auto alphas = geo_quarter();
  const StripMeasure m(alphas);
  DetRng rng(0x7712);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t depth = rng.below(7);
    BitString cyl;
    for (std::size_t i = 0; i < depth; ++i) cyl.append(static_cast<int>(rng.bit()));
    std::uint64_t a = rng.below(64), b = rng.below(64) + 1;
    if (a >= b) {
      std::swap(a, b);
      ++b;
    }
    const Rect r{DyadicInterval(Dyadic(Int(a), 6), Dyadic(Int(b), 6)), cyl};

    const auto t = trim_rect(*alphas, r);
    const Rational trimmed_mass = t ? uniform_measure(*t) : Rational(0);
    // trimmed region is product-uniform, so both measures agree on it
    if (t) CHECK(m.eval(*t) == trimmed_mass);

    const Rational whole = m.eval(r);
    CHECK(trimmed_mass <= whole);

    // equality holds exactly when the part below the cut carries no mass
    const Dyadic cut = alphas->at0(cyl.size());
    Rational below = 0;
    if (auto left = DyadicInterval::make(r.interval.lo(), min(r.interval.hi(), cut)))
      below = m.eval({*left, cyl});
    CHECK((trimmed_mass == whole) == (below == 0));
    CHECK(whole == trimmed_mass + below);
  }
}

TEST_CASE("a touched rectangle can keep its full mass") {
  auto alphas = geo_quarter();
  const StripMeasure m(alphas);
  // the floor moves from 0 to 1/4, yet nothing was lost: the branch with an
  // early 1 had no mass below the cut to begin with
  const Rect r = rect(0, 0, 1, 1, "1");
  const auto t = trim_rect(*alphas, r);
  REQUIRE(t.has_value());
  CHECK(t->interval.lo() == dy(1, 2));
  CHECK(uniform_measure(*t) == m.eval(r));
  // whereas the all-zero branch pays for its band mass
  const Rect r0 = rect(0, 0, 1, 1, "0");
  const auto t0 = trim_rect(*alphas, r0);
  REQUIRE(t0.has_value());
  CHECK(uniform_measure(*t0) < m.eval(r0));
}

TEST_CASE("level bookkeeping") {
  auto alphas = geo_quarter();
  const StripMeasure m(alphas);
  TestLevel level(2, {rect(0, 0, 1, 3, "1"), rect(1, 1, 5, 3, "11")}, m);
  CHECK(level.index() == 2);
  CHECK(level.budget() == Rational(1, 4));
  // first rect carries nothing, second is uniform above the cut
  CHECK(level.strip_mass() == Rational(1, 32));
  CHECK(level.within_budget());

  level.push(rect(0, 0, 1, 0, ""), m);  // mass 1 blows the budget
  CHECK(level.strip_mass() == Rational(33, 32));
  CHECK(!level.within_budget());
}

TEST_CASE("verify_conditions accepts an honest trim") {
  auto alphas = geo_quarter();
  const StripMeasure m(alphas);
  const TestLevel level(1,
                        {rect(0, 0, 1, 1, "1"), rect(0, 0, 1, 3, "1"), rect(1, 1, 1, 0, "01"),
                         rect(0, 0, 1, 2, "")},
                        m);
  const TrimmedLevel trimmed = trim_level(*alphas, level);
  CHECK(trimmed.rects.size() == 4);
  CHECK(trimmed.kept() == 3);  // the slice below the cut is gone

  const VerificationReport rep =
      verify_conditions(m, level, trimmed, {dy(1, 2), dy(3, 3), dy(7, 4)});
  CHECK(rep.all_pass());
  CHECK(rep.aggregate_dominated);
  CHECK(rep.uniform_total <= rep.strip_total);
  REQUIRE(rep.probes.size() == 3);
  for (const ProbeCheck& pc : rep.probes) {
    CHECK(pc.consistent);
    CHECK(pc.checked + pc.skipped == 4);
  }
  // the probe at a_1 = 1/4 sits at every cut of depth <= 1 but below a_2
  CHECK(rep.probes[0].skipped == 1);
}

TEST_CASE("verify_conditions flags a slice that moved") {
  auto alphas = geo_quarter();
  const StripMeasure m(alphas);
  const TestLevel level(1, {rect(1, 2, 3, 2, "1")}, m);
  // doctored trim: floor pushed past the cut, stealing part of the slice
  TrimmedLevel bogus;
  bogus.rects.push_back(Rect{DyadicInterval(dy(1, 1), dy(3, 2)), BitString::parse("1")});
  const VerificationReport rep = verify_conditions(m, level, bogus, {dy(1, 2)});
  REQUIRE(rep.probes.size() == 1);
  CHECK(!rep.probes[0].consistent);
  CHECK(!rep.all_pass());
}

TEST_CASE("level lines parse with comments and errors carry line numbers") {
  std::istringstream in(
      "# demo level\n"
      "\n"
      "0 1/2 1\n"
      "1/4 3/8 -  # empty cylinder\n"
      "1/2 1 (empty)\n");
  const std::vector<Rect> rects = parse_level_lines(in);
  REQUIRE(rects.size() == 3);
  CHECK(rects[0].cyl == BitString::parse("1"));
  CHECK(rects[1].cyl.empty());
  CHECK(rects[2].interval.hi() == Dyadic(1));

  std::istringstream bad("0 1/2 1\n1/2 1/4 0\n");
  try {
    parse_level_lines(bad);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::istringstream nondyadic("0 1/3 1\n");
  CHECK_THROWS_AS(parse_level_lines(nondyadic), ParseError);
  std::istringstream toobig("1/2 9/8 1\n");
  CHECK_THROWS_AS(parse_level_lines(toobig), ParseError);
  std::istringstream short_row("1/2 1\n");
  CHECK_THROWS_AS(parse_level_lines(short_row), ParseError);
}
