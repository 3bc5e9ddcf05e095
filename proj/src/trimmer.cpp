// SPDX-License-Identifier: Apache-2.0
#include "cantorlab/trimmer.hpp"

#include <fstream>
#include <sstream>

#include "cantorlab/errors.hpp"

namespace cantorlab {

TestLevel::TestLevel(std::size_t index, std::vector<Rect> rects, const StripMeasure& m)
    : index_(index) {
  for (const Rect& r : rects) push(r, m);
}

void TestLevel::push(const Rect& r, const StripMeasure& m) {
  strip_mass_ += m.eval(r);
  rects_.push_back(r);
}

std::size_t TrimmedLevel::kept() const {
  std::size_t n = 0;
  for (const auto& r : rects)
    if (r) ++n;
  return n;
}

std::optional<Rect> trim_rect(const AlphaSequence& alphas, const Rect& r) {
  const Dyadic cut = alphas.at0(r.cyl.size());
  if (!(cut < r.interval.hi())) return std::nullopt;
  return Rect{DyadicInterval(max(r.interval.lo(), cut), r.interval.hi()), r.cyl};
}

TrimmedLevel trim_level(const AlphaSequence& alphas, const TestLevel& level) {
  TrimmedLevel out;
  out.rects.reserve(level.rects().size());
  for (const Rect& r : level.rects()) out.rects.push_back(trim_rect(alphas, r));
  return out;
}

bool VerificationReport::all_pass() const {
  if (!aggregate_dominated) return false;
  for (const auto& rc : rects)
    if (!rc.dominated) return false;
  for (const auto& pc : probes)
    if (!pc.consistent) return false;
  return true;
}

VerificationReport verify_conditions(const StripMeasure& m, const TestLevel& level,
                                     const TrimmedLevel& trimmed,
                                     const std::vector<Dyadic>& probes) {
  if (trimmed.rects.size() != level.rects().size())
    throw std::invalid_argument("trimmed level does not match the original level");

  VerificationReport rep;
  rep.rects.reserve(level.rects().size());
  for (std::size_t i = 0; i < level.rects().size(); ++i) {
    RectCheck rc{level.rects()[i], trimmed.rects[i], 0, 0, false};
    rc.strip_original = m.eval(rc.original);
    if (rc.trimmed) rc.uniform_trimmed = uniform_measure(*rc.trimmed);
    rc.dominated = rc.uniform_trimmed <= rc.strip_original;
    rep.uniform_total += rc.uniform_trimmed;
    rep.strip_total += rc.strip_original;
    rep.rects.push_back(std::move(rc));
  }
  rep.aggregate_dominated = rep.uniform_total <= rep.strip_total;

  for (const Dyadic& g : probes) {
    ProbeCheck pc{g, 0, 0, true};
    for (std::size_t i = 0; i < level.rects().size(); ++i) {
      const Rect& orig = level.rects()[i];
      const Dyadic cut = m.alphas().at0(orig.cyl.size());
      if (g < cut) {
        ++pc.skipped;
        continue;
      }
      const bool in_original = orig.interval.contains(g);
      const bool in_trimmed = trimmed.rects[i] && trimmed.rects[i]->interval.contains(g);
      if (in_original != in_trimmed) pc.consistent = false;
      ++pc.checked;
    }
    rep.probes.push_back(std::move(pc));
  }
  return rep;
}

Rect parse_rect_tokens(const std::string& lo, const std::string& hi, const std::string& cyl) {
  const Dyadic dlo = parse_dyadic(lo);
  const Dyadic dhi = parse_dyadic(hi);
  if (!(dlo < dhi))
    throw ParseError("rect needs lo < hi, got " + dlo.frac_str() + " and " + dhi.frac_str());
  if (Dyadic(1) < dhi) throw ParseError("rect endpoint " + dhi.frac_str() + " exceeds 1");
  BitString bits;
  if (cyl != "-" && cyl != "(empty)") bits = BitString::parse(cyl);
  return Rect{DyadicInterval(dlo, dhi), bits};
}

std::vector<Rect> parse_level_lines(std::istream& in) {
  std::vector<Rect> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    std::string lo, hi, cyl, extra;
    if (!(row >> lo)) continue;  // blank
    if (!(row >> hi >> cyl) || (row >> extra))
      throw ParseError("line " + std::to_string(lineno) + ": expected 'lo hi cyl'");
    try {
      out.push_back(parse_rect_tokens(lo, hi, cyl));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Rect> load_level_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open level file '" + path + "'");
  return parse_level_lines(in);
}

}  // namespace cantorlab
