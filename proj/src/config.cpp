// SPDX-License-Identifier: Apache-2.0
#include "cantorlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "cantorlab/errors.hpp"

namespace cantorlab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  if (v.empty()) throw ConfigError(key + " needs a value");
  std::uint64_t out = 0;
  for (char c : v) {
    if (c < '0' || c > '9') throw ConfigError(key + " must be a non-negative integer, got '" + v + "'");
    if (out > (~std::uint64_t{0} - (c - '0')) / 10) throw ConfigError(key + " overflows");
    out = out * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return out;
}

struct RawConfig {
  // section -> key -> (value, line number)
  std::map<std::string, std::map<std::string, std::pair<std::string, std::size_t>>> kv;

  const std::string* get(const std::string& sec, const std::string& key) const {
    const auto s = kv.find(sec);
    if (s == kv.end()) return nullptr;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    return &k->second.first;
  }
};

Dyadic unit_dyadic(const std::string& v, const std::string& key) {
  Dyadic d;
  try {
    d = parse_dyadic(v);
  } catch (const ParseError& e) {
    throw ConfigError(key + ": " + e.what());
  }
  if (d.sign() <= 0 || !(d < Dyadic(1)))
    throw ConfigError(key + " must lie in (0,1), got " + v);
  return d;
}

}  // namespace

LabConfig default_config() {
  LabConfig cfg;
  cfg.ce.members = {{1, 2}};
  cfg.ce.nonmember = 0;
  cfg.ce.horizon = 24;
  cfg.alpha = GeneratorSpec::geometric(Dyadic(Int(1), 2), Dyadic(Int(1), 1));
  return cfg;
}

LabConfig parse_config(std::istream& in, const std::string& origin) {
  RawConfig raw;
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "alpha" && section != "ce" && section != "experiment")
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    if (section.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!raw.kv[section].emplace(key, std::make_pair(value, lineno)).second)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }

  // reject unknown keys up front so typos never silently fall back to defaults
  static const std::map<std::string, std::vector<std::string>> known = {
      {"alpha", {"kind", "start", "ratio", "terms"}},
      {"ce", {"members", "nonmember", "horizon"}},
      {"experiment", {"seed", "max_depth", "sample_count", "eps"}}};
  for (const auto& [sec, keys] : raw.kv)
    for (const auto& [key, val] : keys) {
      const auto& allowed = known.at(sec);
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw ConfigError(origin + ":" + std::to_string(val.second) + ": unknown key '" + key +
                          "' in [" + sec + "]");
    }

  LabConfig cfg = default_config();

  if (const auto* v = raw.get("ce", "nonmember")) {
    const std::uint64_t n = parse_u64(*v, "nonmember");
    if (n > 4096) throw ConfigError("nonmember index too large");
    cfg.ce.nonmember = static_cast<unsigned>(n);
  }
  if (const auto* v = raw.get("ce", "horizon")) {
    const std::uint64_t h = parse_u64(*v, "horizon");
    if (h == 0 || h > 1u << 20) throw ConfigError("horizon must be in [1, 2^20]");
    cfg.ce.horizon = static_cast<unsigned>(h);
  }
  if (const auto* v = raw.get("ce", "members")) {
    cfg.ce.members.clear();
    for (const std::string& item : split_list(*v)) {
      const auto at = item.find('@');
      if (at == std::string::npos)
        throw ConfigError("members entries look like 'index@stage', got '" + item + "'");
      const std::uint64_t idx = parse_u64(item.substr(0, at), "members index");
      const std::uint64_t t = parse_u64(item.substr(at + 1), "members stage");
      if (idx > 4096) throw ConfigError("member index too large in '" + item + "'");
      if (t == 0 || t > 1u << 20) throw ConfigError("member stage out of range in '" + item + "'");
      cfg.ce.members.push_back({static_cast<unsigned>(idx), static_cast<unsigned>(t)});
    }
  }
  cfg.ce.validate();

  std::string kind = "geometric";
  if (const auto* v = raw.get("alpha", "kind")) kind = *v;
  auto forbid = [&](const char* key) {
    if (raw.get("alpha", key))
      throw ConfigError(std::string("alpha key '") + key + "' does not apply to kind " + kind);
  };
  if (kind == "geometric") {
    forbid("terms");
    Dyadic start(Int(1), 2), ratio(Int(1), 1);
    if (const auto* v = raw.get("alpha", "start")) start = unit_dyadic(*v, "start");
    if (const auto* v = raw.get("alpha", "ratio")) ratio = unit_dyadic(*v, "ratio");
    cfg.alpha = GeneratorSpec::geometric(start, ratio);
  } else if (kind == "explicit-list") {
    forbid("start");
    forbid("ratio");
    const auto* v = raw.get("alpha", "terms");
    if (!v) throw ConfigError("explicit-list needs a terms key");
    std::vector<Dyadic> terms;
    for (const std::string& item : split_list(*v)) {
      Dyadic d;
      try {
        d = parse_dyadic(item);
      } catch (const ParseError& e) {
        throw ConfigError(std::string("terms: ") + e.what());
      }
      terms.push_back(d);
    }
    cfg.alpha = GeneratorSpec::explicit_list(std::move(terms));
  } else if (kind == "specker") {
    forbid("start");
    forbid("ratio");
    forbid("terms");
    cfg.alpha = GeneratorSpec::specker(cfg.ce);
  } else {
    throw ConfigError("unknown alpha kind '" + kind + "'");
  }

  if (const auto* v = raw.get("experiment", "seed")) cfg.seed = parse_u64(*v, "seed");
  if (const auto* v = raw.get("experiment", "max_depth")) {
    const std::uint64_t d = parse_u64(*v, "max_depth");
    if (d == 0 || d > 1u << 16) throw ConfigError("max_depth must be in [1, 2^16]");
    cfg.max_depth = static_cast<std::size_t>(d);
  }
  if (const auto* v = raw.get("experiment", "sample_count")) {
    const std::uint64_t c = parse_u64(*v, "sample_count");
    if (c == 0 || c > 10'000'000) throw ConfigError("sample_count must be in [1, 10^7]");
    cfg.sample_count = static_cast<std::size_t>(c);
  }
  if (const auto* v = raw.get("experiment", "eps")) {
    Dyadic e;
    try {
      e = parse_dyadic(*v);
    } catch (const ParseError& ex) {
      throw ConfigError(std::string("eps: ") + ex.what());
    }
    if (e.sign() <= 0 || Dyadic(1) < e) throw ConfigError("eps must lie in (0, 1]");
    cfg.eps = e.to_rational();
  }
  return cfg;
}

LabConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

}  // namespace cantorlab
