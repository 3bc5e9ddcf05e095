// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cantorlab/ce.hpp"
#include "cantorlab/config.hpp"
#include "cantorlab/errors.hpp"
#include "cantorlab/rational.hpp"
#include "cantorlab/rng.hpp"
#include "cantorlab/selftest.hpp"
#include "cantorlab/strip_measure.hpp"
#include "cantorlab/trimmer.hpp"

namespace {

using namespace cantorlab;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

LabConfig load_or_default(const std::string& path) {
  if (path.empty()) return default_config();
  return load_config(path);
}

// "lo hi cyl" with cyl "-" or "(empty)" for the empty word
Rect parse_rect_arg(const std::vector<std::string>& tokens) {
  std::vector<std::string> fields;
  for (const std::string& t : tokens) {
    std::istringstream split(t);
    std::string piece;
    while (split >> piece) fields.push_back(piece);
  }
  if (fields.size() != 3)
    throw ParseError("expected 3 rect fields 'lo hi cyl', got " + std::to_string(fields.size()));
  return parse_rect_tokens(fields[0], fields[1], fields[2]);
}

std::vector<Dyadic> parse_dyadic_list(const std::string& csv) {
  std::vector<Dyadic> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(parse_dyadic(item));
  return out;
}

std::vector<std::size_t> parse_depth_list(const std::string& csv) {
  std::vector<std::size_t> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const unsigned long v = std::stoul(item, &pos);
    if (pos != item.size()) throw ParseError("bad depth '" + item + "'");
    out.push_back(v);
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw ParseError("depths must be strictly increasing");
  return out;
}

// every command that emits CSV funnels through here so stdout and --csv see
// identical bytes
void emit(const std::string& text, const std::string& csv_path) {
  if (csv_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(csv_path, std::ios::binary);
  if (!out) throw Error("cannot write CSV file '" + csv_path + "'");
  out << text;
  std::cout << "wrote " << csv_path << "\n";
}

int cmd_eval_p(const LabConfig& cfg, const std::vector<std::string>& rect_tokens) {
  const Rect r = parse_rect_arg(rect_tokens);
  const StripMeasure m(std::make_shared<AlphaSequence>(cfg.alpha));
  const Rational v = m.eval(r);
  std::cout << "P(" << r.str() << ") = " << rat_str(v) << " = " << rat_decimal(v) << "\n";
  return kExitOk;
}

int cmd_eval_phat(const LabConfig& cfg, std::size_t k, const std::string& cyl_text) {
  BitString cyl;
  if (cyl_text != "-" && cyl_text != "(empty)") cyl = BitString::parse(cyl_text);
  const CeMeasure m(cfg.ce);
  const Rational raw = m.rect_mass(k, cyl);
  const Rational norm = raw * m.normalization();
  std::cout << "mass of {" << k << "} x [" << cyl.display() << "]\n";
  std::cout << "raw = " << rat_str(raw) << " = " << rat_decimal(raw) << "\n";
  std::cout << "normalized = " << rat_str(norm) << " = " << rat_decimal(norm) << "\n";
  return kExitOk;
}

int cmd_converge_vlf(const LabConfig& cfg, const std::string& prefix_text,
                     const std::vector<std::string>& interval_tokens,
                     const std::string& depths_csv, const std::string& csv_path) {
  const BitString prefix =
      (prefix_text == "-" || prefix_text == "(empty)") ? BitString() : BitString::parse(prefix_text);
  if (interval_tokens.size() != 2) throw ParseError("--interval needs 'lo hi'");
  const Dyadic lo = parse_dyadic(interval_tokens[0]);
  const Dyadic hi = parse_dyadic(interval_tokens[1]);
  if (!(lo < hi)) throw ParseError("interval needs lo < hi");
  const DyadicInterval interval(lo, hi);

  std::vector<std::size_t> depths;
  if (depths_csv.empty()) {
    for (std::size_t d = 0; d <= prefix.size(); ++d) depths.push_back(d);
  } else {
    depths = parse_depth_list(depths_csv);
    for (const std::size_t d : depths)
      if (d > prefix.size())
        throw ParseError("depth " + std::to_string(d) + " exceeds the prefix length");
  }

  const StripMeasure m(std::make_shared<AlphaSequence>(cfg.alpha));
  std::ostringstream csv;
  csv << "depth,status,ratio,predicted,ratio_decimal,predicted_decimal\n";
  for (const std::size_t d : depths) {
    const BitString b = prefix.prefix(d);
    try {
      const ConditionalReport rep = m.conditional(interval, b);
      csv << d << ",ok," << rat_str(rep.ratio) << "," << rat_str(rep.predicted) << ","
          << rat_decimal(rep.ratio) << "," << rat_decimal(rep.predicted) << "\n";
    } catch (const ZeroMarginal&) {
      csv << d << ",zero-marginal,,,,\n";
    }
  }
  emit(csv.str(), csv_path);
  return kExitOk;
}

int cmd_converge_ce(const LabConfig& cfg, std::size_t index, const std::string& prefix_text,
                    bool sampled, std::uint64_t seed, const Rational& eps,
                    const std::string& depths_csv, const std::string& csv_path) {
  const CeMeasure m(cfg.ce);
  std::unique_ptr<PrefixSource> src;
  if (sampled) {
    src = std::make_unique<SampledPrefix>(seed);
  } else {
    BitString head;
    if (!prefix_text.empty() && prefix_text != "-" && prefix_text != "(empty)")
      head = BitString::parse(prefix_text);
    src = std::make_unique<PaddedPrefix>(head);
  }

  const std::size_t truncation = m.truncation_for(index, eps);
  std::ostringstream csv;
  csv << "depth,lower,upper,width,lower_decimal,upper_decimal\n";
  auto row = [&](std::size_t d) {
    const CertifiedValue cv = m.conditional_at_depth(index, src->take(d), truncation);
    csv << d << "," << rat_str(cv.lower) << "," << rat_str(cv.upper) << ","
        << rat_str(cv.width()) << "," << rat_decimal(cv.lower) << "," << rat_decimal(cv.upper)
        << "\n";
    return cv.width();
  };
  if (depths_csv.empty()) {
    std::size_t d = m.instance().max_time() + 2;
    for (;;) {
      const Rational w = row(d);
      if (w <= eps) break;
      if (d > 100000)
        throw PrecisionUnreachable("width still above target at depth " + std::to_string(d));
      d += 4;
    }
  } else {
    for (const std::size_t d : parse_depth_list(depths_csv)) row(d);
  }
  std::cerr << "# source: " << src->describe() << "\n";
  emit(csv.str(), csv_path);
  return kExitOk;
}

int cmd_trim_demo(const LabConfig& cfg, const std::string& level_path, std::size_t index,
                  const std::string& probes_csv) {
  auto alphas = std::make_shared<AlphaSequence>(cfg.alpha);
  const StripMeasure m(alphas);
  const TestLevel level(index, load_level_file(level_path), m);
  const TrimmedLevel trimmed = trim_level(*alphas, level);

  std::vector<Dyadic> probes;
  if (probes_csv.empty()) {
    std::size_t count = alphas->available_terms();
    if (count == AlphaSequence::kUnbounded) count = 16;
    count = std::min<std::size_t>(count, 16);
    for (std::size_t j = 1; j <= count; ++j) probes.push_back(alphas->at(j));
  } else {
    probes = parse_dyadic_list(probes_csv);
  }

  const VerificationReport rep = verify_conditions(m, level, trimmed, probes);

  std::cout << "level index " << level.index() << ", budget " << rat_str(level.budget())
            << ", strip mass " << rat_str(level.strip_mass())
            << (level.within_budget() ? " (within budget)" : " (over budget)") << "\n";
  for (std::size_t i = 0; i < rep.rects.size(); ++i) {
    const RectCheck& rc = rep.rects[i];
    std::cout << "rect " << (i + 1) << ": " << rc.original.str() << " -> "
              << (rc.trimmed ? rc.trimmed->str() : "(dropped)") << "  uniform(trim) "
              << rat_str(rc.uniform_trimmed) << " <= strip(orig) " << rat_str(rc.strip_original)
              << "  " << (rc.dominated ? "OK" : "FAIL") << "\n";
  }
  std::cout << "aggregate: uniform(trimmed) " << rat_str(rep.uniform_total)
            << " <= strip(original) " << rat_str(rep.strip_total) << "  "
            << (rep.aggregate_dominated ? "OK" : "FAIL") << "\n";
  for (const ProbeCheck& pc : rep.probes)
    std::cout << "probe " << pc.probe.frac_str() << ": checked " << pc.checked << ", skipped "
              << pc.skipped << "  " << (pc.consistent ? "OK" : "FAIL") << "\n";

  if (rep.all_pass()) {
    std::cout << "ALL CHECKS PASS\n";
    return kExitOk;
  }
  std::cout << "CHECKS FAILED\n";
  return kExitCheckFailed;
}

int cmd_decode(const LabConfig& cfg, std::uint64_t seed, std::size_t batch) {
  if (batch == 0) {
    const CeMeasure m(cfg.ce);
    SampledPrefix beta(seed);
    std::size_t wrong = 0;
    std::cout << "n\tdecoded\ttruth\tqueries\n";
    for (unsigned n = 0; n <= cfg.ce.horizon; ++n) {
      const DecodeResult res = decode_membership(m, n, beta);
      const bool truth = cfg.ce.is_member(n);
      if (res.member != truth) ++wrong;
      std::cout << n << "\t" << (res.member ? "member" : "nonmember") << "\t"
                << (truth ? "member" : "nonmember") << "\t" << res.queries << "\n";
    }
    std::cout << "decode: " << (cfg.ce.horizon + 1 - wrong) << "/" << (cfg.ce.horizon + 1)
              << " correct\n";
    return wrong == 0 ? kExitOk : kExitCheckFailed;
  }

  DetRng rng(seed);
  std::size_t wrong = 0, total = 0;
  for (std::size_t i = 0; i < batch; ++i) {
    CeInstance inst;
    inst.horizon = 24;
    const std::size_t count = rng.below(7);
    while (inst.members.size() < count) {
      const unsigned idx = static_cast<unsigned>(rng.below(13));
      if (!inst.find(idx)) inst.members.push_back({idx, static_cast<unsigned>(1 + rng.below(8))});
    }
    inst.nonmember = 0;
    while (inst.find(inst.nonmember)) ++inst.nonmember;
    const CeMeasure m(inst);
    SampledPrefix beta(rng.word());
    const unsigned top = inst.max_member_index() + 2;
    std::size_t bad = 0;
    for (unsigned n = 0; n <= top; ++n) {
      ++total;
      if (decode_membership(m, n, beta).member != inst.is_member(n)) {
        ++bad;
        ++wrong;
      }
    }
    std::cout << "instance " << i << ": " << (top + 1 - bad) << "/" << (top + 1) << " correct\n";
  }
  std::cout << "decode batch: " << batch << " instances, " << total << " indices, " << wrong
            << " mismatches\n";
  return wrong == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_sample(const LabConfig& cfg, std::uint64_t seed, std::size_t depth,
               const std::string& csv_path) {
  if (depth == 0) depth = std::min<std::size_t>(8, cfg.max_depth);
  if (depth > cfg.max_depth)
    throw ConfigError("depth " + std::to_string(depth) + " exceeds max_depth " +
                      std::to_string(cfg.max_depth));
  const CeMeasure m(cfg.ce);
  DetRng rng(seed);
  std::ostringstream csv;
  csv << "sample,bits\n";
  for (std::size_t i = 0; i < cfg.sample_count; ++i)
    csv << i << "," << sample_marginal(m, rng, depth).str() << "\n";
  emit(csv.str(), csv_path);
  return kExitOk;
}

int cmd_selftest(const LabConfig& cfg) {
  bool ok = true;
  std::size_t checks = 0;
  for (const SuiteResult& r : run_selftest(cfg)) {
    checks += r.checks;
    std::cout << "suite " << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << " ("
              << r.checks << " checks)" << "\n";
    for (const std::string& f : r.failures) {
      std::cout << "  failure: " << f << "\n";
      ok = false;
    }
  }
  std::cout << "selftest: " << (ok ? "PASS" : "FAIL") << " (" << checks << " checks)\n";
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact measures on [0,1) x 2^N: strip measure, test trimming, index decoding"};
  app.require_subcommand(1);

  std::string config_path, csv_path, prefix_text, depths_csv, probes_csv, eps_text;
  std::vector<std::string> rect_tokens, interval_tokens;
  std::string cyl_text = "(empty)";
  std::size_t index = 0, level_index = 1, batch = 0, depth = 0;
  std::uint64_t seed = 0;
  bool sampled = false, seed_given = false;
  std::string mode = "vlf", level_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file (defaults when absent)");
  };

  CLI::App* evalp = app.add_subcommand("eval-p", "exact strip-measure mass of one rectangle");
  add_common(evalp);
  evalp->add_option("rect", rect_tokens, "rect as \"lo hi cyl\" (cyl may be '-' or '(empty)')")
      ->required()
      ->expected(1, 3);

  CLI::App* evalphat = app.add_subcommand("eval-phat", "raw and normalized index-pair mass");
  add_common(evalphat);
  evalphat->add_option("index", index, "index k")->required();
  evalphat->add_option("cyl", cyl_text, "cylinder bits ('-' or '(empty)' for the whole space)");

  CLI::App* conv = app.add_subcommand("converge", "cylinder-ratio and certification traces");
  add_common(conv);
  conv->add_option("--mode", mode, "vlf (strip conditional) or ce (certified trace)")
      ->check(CLI::IsMember({"vlf", "ce"}));
  conv->add_option("--prefix", prefix_text, "second-coordinate bits");
  conv->add_option("--interval", interval_tokens, "vlf: interval as lo hi")->expected(2);
  conv->add_option("--index", index, "ce: index whose conditional is traced");
  conv->add_option("--depths", depths_csv, "comma-separated increasing depths");
  conv->add_option("--eps", eps_text, "ce: target width, dyadic like 1/2^20");
  conv->add_flag("--sample", sampled, "ce: draw the coordinate from the seeded sampler");
  conv->add_option("--seed", seed, "sampler seed")->each([&](const std::string&) {
    seed_given = true;
  });
  conv->add_option("--csv", csv_path, "write rows to this file instead of stdout");

  CLI::App* trim = app.add_subcommand("trim-demo", "trim a test level and verify the conditions");
  add_common(trim);
  trim->add_option("level", level_path, "level file, one 'lo hi cyl' per line")->required();
  trim->add_option("--index", level_index, "level index n (budget 2^-n)");
  trim->add_option("--probes", probes_csv, "comma-separated probe points (defaults to the cuts)");

  CLI::App* dec = app.add_subcommand("decode", "recover membership from conditional values only");
  add_common(dec);
  dec->add_option("--seed", seed, "coordinate sampler seed")->each([&](const std::string&) {
    seed_given = true;
  });
  dec->add_option("--batch", batch, "decode this many random instances instead of the configured one");

  CLI::App* samp = app.add_subcommand("sample", "draw marginal samples of the second coordinate");
  add_common(samp);
  samp->add_option("--seed", seed, "sampler seed")->each([&](const std::string&) {
    seed_given = true;
  });
  samp->add_option("--depth", depth, "bits per sample (default min(8, max_depth))");
  samp->add_option("--csv", csv_path, "write samples to this file instead of stdout");

  CLI::App* self = app.add_subcommand("selftest", "run every module's invariant suite");
  add_common(self);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const LabConfig cfg = load_or_default(config_path);
    if (!seed_given) seed = cfg.seed;
    Rational eps = cfg.eps;
    if (!eps_text.empty()) {
      eps = parse_dyadic_rational(eps_text);
      if (eps <= 0) throw ParseError("eps must be positive");
    }

    if (evalp->parsed()) return cmd_eval_p(cfg, rect_tokens);
    if (evalphat->parsed()) return cmd_eval_phat(cfg, index, cyl_text);
    if (conv->parsed()) {
      if (mode == "vlf") {
        if (interval_tokens.empty()) throw ParseError("vlf mode needs --interval lo hi");
        return cmd_converge_vlf(cfg, prefix_text.empty() ? "(empty)" : prefix_text,
                                interval_tokens, depths_csv, csv_path);
      }
      return cmd_converge_ce(cfg, index, prefix_text, sampled, seed, eps, depths_csv, csv_path);
    }
    if (trim->parsed()) return cmd_trim_demo(cfg, level_path, level_index, probes_csv);
    if (dec->parsed()) return cmd_decode(cfg, seed, batch);
    if (samp->parsed()) return cmd_sample(cfg, seed, depth, csv_path);
    if (self->parsed()) return cmd_selftest(cfg);
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}
