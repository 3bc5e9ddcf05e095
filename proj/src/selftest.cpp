// SPDX-License-Identifier: Apache-2.0
#include "cantorlab/selftest.hpp"

#include <functional>
#include <memory>
#include <sstream>

#include "cantorlab/ce.hpp"
#include "cantorlab/errors.hpp"
#include "cantorlab/rational.hpp"
#include "cantorlab/strip_measure.hpp"
#include "cantorlab/trimmer.hpp"

namespace cantorlab {

namespace {

std::string error_label(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const PartitionError*>(&e)) return "PartitionError";
  if (dynamic_cast<const GeneratorExhausted*>(&e)) return "GeneratorExhausted";
  if (dynamic_cast<const MonotonicityViolation*>(&e)) return "MonotonicityViolation";
  if (dynamic_cast<const ZeroMarginal*>(&e)) return "ZeroMarginal";
  if (dynamic_cast<const PrecisionUnreachable*>(&e)) return "PrecisionUnreachable";
  if (dynamic_cast<const OracleExhausted*>(&e)) return "OracleExhausted";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "exception";
}

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++result_.checks;
    if (!ok) result_.failures.push_back(what);
  }

  // run a block, recording any exception as a failure tagged with its type
  void guarded(const std::string& what, const std::function<void()>& body) {
    ++result_.checks;
    try {
      body();
    } catch (const std::exception& e) {
      result_.failures.push_back(what + ": " + error_label(e) + ": " + e.what());
    }
  }

  void expect_throw(const std::string& what, const std::function<void()>& body) {
    ++result_.checks;
    try {
      body();
      result_.failures.push_back(what + ": expected an error, none raised");
    } catch (const Error&) {
    }
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

SuiteResult suite_dyadic(const LabConfig&) {
  Suite s("dyadic-core");
  s.check(Dyadic(Int(1), 2) + Dyadic(Int(1), 2) == Dyadic(Int(1), 1), "1/4 + 1/4 = 1/2");
  s.check(parse_dyadic("6/2^4") == parse_dyadic("3/8"), "parse canonicalizes");
  s.check(cylinder_to_interval(BitString::parse("01")) ==
              DyadicInterval(Dyadic(Int(1), 2), Dyadic(Int(1), 1)),
          "cylinder [01] is [1/4, 1/2)");
  s.guarded("split partitions", [&] {
    const DyadicInterval i(Dyadic(0), Dyadic(1));
    const auto [a, b] = split_interval(i, Dyadic(Int(3), 3));
    if (!a || !b || !(a->length() + b->length() == i.length()))
      throw Error("split pieces fail to reassemble");
  });
  s.guarded("strip partition covers", [&] {
    const std::vector<Dyadic> breaks{Dyadic(Int(1), 2), Dyadic(Int(1), 1), Dyadic(1)};
    Dyadic covered;
    for (const auto& [band, piece] : strip_partition(DyadicInterval(Dyadic(0), Dyadic(1)), breaks))
      covered = covered + piece.length();
    if (covered != Dyadic(1)) throw Error("pieces fail to cover");
  });
  s.expect_throw("strip partition rejects short breaks", [&] {
    strip_partition(DyadicInterval(Dyadic(0), Dyadic(1)), {Dyadic(Int(1), 1)});
  });
  return s.take();
}

SuiteResult suite_alpha(const LabConfig& cfg) {
  Suite s("alpha-gen");
  const AlphaSequence seq(cfg.alpha);
  const std::size_t probe =
      std::min<std::size_t>(seq.available_terms() == AlphaSequence::kUnbounded
                                ? 24
                                : seq.available_terms(),
                            24);
  s.guarded("terms strictly increase inside (0,1)", [&] {
    Dyadic prev;
    for (std::size_t n = 1; n <= probe; ++n) {
      const Dyadic a = seq.at(n);
      if (!(prev < a) || !(a < Dyadic(1)))
        throw MonotonicityViolation("term " + std::to_string(n) + " out of order");
      prev = a;
    }
  });
  s.guarded("same spec reproduces the same terms", [&] {
    const AlphaSequence again(cfg.alpha);
    for (std::size_t n = 1; n <= probe; ++n)
      if (seq.at(n) != again.at(n)) throw Error("terms differ at " + std::to_string(n));
  });
  s.guarded("limit bracket is consistent", [&] {
    if (probe == 0) return;
    const auto [lower, upper] = seq.limit_bounds(probe);
    if (upper && !(lower.to_rational() <= *upper))
      throw Error("lower bound exceeds upper bound");
  });
  return s.take();
}

SuiteResult suite_strip(const LabConfig& cfg) {
  Suite s("strip-measure");
  auto alphas = std::make_shared<AlphaSequence>(cfg.alpha);
  const StripMeasure m(alphas);
  const std::size_t depth =
      std::min<std::size_t>(alphas->available_terms() == AlphaSequence::kUnbounded
                                ? 6
                                : alphas->available_terms(),
                            6);
  s.guarded("total mass is 1", [&] {
    if (m.marginal(BitString()) != Rational(1)) throw Error("total mass deviates from 1");
  });
  s.guarded("marginals telescope", [&] {
    for (std::size_t d = 0; d < depth; ++d) {
      const std::uint64_t cells = std::uint64_t{1} << d;
      for (std::uint64_t c = 0; c < cells; ++c) {
        BitString x;
        for (std::size_t b = d; b-- > 0;) x.append(static_cast<int>((c >> b) & 1));
        if (m.marginal(x) != m.marginal(x.extended(0)) + m.marginal(x.extended(1)))
          throw Error("marginal additivity fails at [" + x.display() + "]");
      }
    }
  });
  s.guarded("uniform at or above the cut", [&] {
    if (depth == 0) return;
    const BitString x = BitString::parse("1");
    const Dyadic cut = alphas->at(x.size());
    const Rect r{DyadicInterval(cut, Dyadic(1)), x};
    if (m.eval(r) != uniform_measure(r)) throw Error("region above the cut is not uniform");
  });
  s.guarded("conditional matches its closed form", [&] {
    if (depth == 0) return;
    const BitString one = BitString::parse("1");
    const auto rep = m.conditional(DyadicInterval(Dyadic(Int(1), 1), Dyadic(1)), one);
    if (!rep.exact_match()) throw Error("one-terminated prefix misses the closed form");
  });
  return s.take();
}

SuiteResult suite_trimmer(const LabConfig& cfg) {
  Suite s("test-trimmer");
  auto alphas = std::make_shared<AlphaSequence>(cfg.alpha);
  const StripMeasure m(alphas);
  const std::size_t depth =
      std::min<std::size_t>(alphas->available_terms() == AlphaSequence::kUnbounded
                                ? 3
                                : alphas->available_terms(),
                            3);
  s.guarded("trimmed level verifies", [&] {
    std::vector<Rect> rects{{DyadicInterval(Dyadic(0), Dyadic(1)), BitString()}};
    for (std::size_t d = 1; d <= depth; ++d) {
      BitString y;
      for (std::size_t i = 1; i < d; ++i) y.append(0);
      y.append(1);
      // reaches past the cut a_d, so trimming has something to do both ways
      const Dyadic hi = (alphas->at(d) + Dyadic(1)).mul_pow2(-1);
      rects.push_back({DyadicInterval(Dyadic(0), hi), y});
    }
    const TestLevel level(1, rects, m);
    const TrimmedLevel trimmed = trim_level(*alphas, level);
    std::vector<Dyadic> probes;
    for (std::size_t j = 1; j <= depth; ++j) probes.push_back(alphas->at(j));
    const auto report = verify_conditions(m, level, trimmed, probes);
    if (!report.all_pass()) throw Error("verification report failed");
  });
  s.guarded("dropped rect has no mass above its cut", [&] {
    if (depth == 0) return;
    BitString y;
    y.append(1);
    const Dyadic a1 = alphas->at(1);
    const Rect r{DyadicInterval(Dyadic(0), a1), y};
    if (trim_rect(*alphas, r)) throw Error("rect below its cut survived trimming");
    if (m.eval(r) != Rational(0)) throw Error("dropped rect carries mass");
  });
  return s.take();
}

SuiteResult suite_ce(const LabConfig& cfg) {
  Suite s("ce-density");
  s.check(density_f0().mean() == Rational(1) && density_f1().mean() == Rational(1),
          "densities have mean 1");
  s.guarded("complementarity on a grid", [&] {
    for (int i = 0; i <= 64; ++i) {
      const Dyadic r(Int(i), 6);
      const Rational a = pwl_eval(density_f0(), r);
      const Rational b = pwl_eval(density_f1(), r);
      const auto extreme = [](const Rational& v) { return v == 0 || v == Rational(2); };
      if (!extreme(a) && !extreme(b)) throw Error("both densities interior at " + r.frac_str());
    }
  });
  s.guarded("measure agrees with its staged view", [&] {
    const CeMeasure m(cfg.ce);
    const std::size_t top = 2 * static_cast<std::size_t>(cfg.ce.max_member_index()) + 3;
    for (std::size_t k = 0; k <= top; ++k) {
      for (const char* cs : {"", "0", "01", "110", "0000"}) {
        const BitString cyl = BitString::parse(cs);
        if (m.rect_mass(k, cyl) != m.rect_mass_staged(k, cyl))
          throw Error("views disagree at index " + std::to_string(k));
        if (!consistency_check(m, k, cyl, 2))
          throw Error("additivity fails at index " + std::to_string(k));
      }
    }
  });
  s.guarded("certified conditional encloses the exact limit", [&] {
    const CeMeasure m(cfg.ce);
    const std::size_t k = m.baseline_slot();
    PaddedPrefix beta{BitString()};
    const auto cv = m.conditional(k, beta, pow2_rat(-10));
    if (!cv.contains(m.limit_conditional(k, BitString())))
      throw Error("limit escapes the certified interval");
  });
  s.guarded("decoding matches the instance", [&] {
    const CeMeasure m(cfg.ce);
    std::vector<unsigned> targets{cfg.ce.nonmember};
    for (const auto& mem : cfg.ce.members)
      if (mem.index <= 32) targets.push_back(mem.index);
    if (cfg.ce.max_member_index() < 32) targets.push_back(cfg.ce.max_member_index() + 1);
    for (const unsigned n : targets) {
      PaddedPrefix beta{BitString()};
      if (decode_membership(m, n, beta).member != cfg.ce.is_member(n))
        throw Error("index " + std::to_string(n) + " decoded wrongly");
    }
  });
  return s.take();
}

SuiteResult suite_cli(const LabConfig& cfg) {
  Suite s("cli-lab");
  s.check(rat_decimal(Rational(1, 3)) == "0.333333333333", "decimal rendering is stable");
  s.guarded("config fragments parse", [&] {
    std::istringstream in(
        "[alpha]\nkind = geometric\nstart = 1/2^2\nratio = 1/2^1\n"
        "[experiment]\nseed = 7\n");
    const LabConfig parsed = parse_config(in, "<selftest>");
    if (parsed.seed != 7) throw Error("seed not applied");
  });
  s.expect_throw("unknown keys are rejected", [&] {
    std::istringstream in("[experiment]\nseeed = 7\n");
    parse_config(in, "<selftest>");
  });
  s.expect_throw("malformed rects are rejected", [&] {
    parse_rect_tokens("1/3", "1/2", "0");
  });
  s.check(cfg.sample_count >= 1 && cfg.max_depth >= 1, "experiment defaults are sane");
  return s.take();
}

}  // namespace

std::vector<SuiteResult> run_selftest(const LabConfig& cfg) {
  std::vector<SuiteResult> out;
  out.push_back(suite_dyadic(cfg));
  out.push_back(suite_alpha(cfg));
  out.push_back(suite_strip(cfg));
  out.push_back(suite_trimmer(cfg));
  out.push_back(suite_ce(cfg));
  out.push_back(suite_cli(cfg));
  return out;
}

}  // namespace cantorlab
