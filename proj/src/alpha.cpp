// SPDX-License-Identifier: Apache-2.0
#include "cantorlab/alpha.hpp"

#include <stdexcept>

#include "cantorlab/errors.hpp"

namespace cantorlab {

namespace {

Dyadic dpow(const Dyadic& base, std::size_t e) {
  Dyadic acc(1), sq = base;
  while (e) {
    if (e & 1) acc = acc * sq;
    sq = sq * sq;
    e >>= 1;
  }
  return acc;
}

}  // namespace

GeneratorSpec GeneratorSpec::explicit_list(std::vector<Dyadic> terms) {
  if (terms.empty()) throw ConfigError("explicit-list generator needs at least one term");
  GeneratorSpec s;
  s.kind = GeneratorKind::ExplicitList;
  s.terms = std::move(terms);
  return s;
}

GeneratorSpec GeneratorSpec::specker(CeInstance instance) {
  instance.validate();
  GeneratorSpec s;
  s.kind = GeneratorKind::Specker;
  s.instance = std::move(instance);
  return s;
}

GeneratorSpec GeneratorSpec::geometric(Dyadic start, Dyadic ratio) {
  if (start.sign() <= 0 || Dyadic(1) <= start)
    throw ConfigError("geometric start must lie in (0,1), got " + start.frac_str());
  if (ratio.sign() <= 0 || Dyadic(1) <= ratio)
    throw ConfigError("geometric ratio must lie in (0,1), got " + ratio.frac_str());
  GeneratorSpec s;
  s.kind = GeneratorKind::Geometric;
  s.start = std::move(start);
  s.ratio = std::move(ratio);
  return s;
}

std::string GeneratorSpec::describe() const {
  switch (kind) {
    case GeneratorKind::ExplicitList:
      return "explicit-list(" + std::to_string(terms.size()) + " terms)";
    case GeneratorKind::Specker:
      return "specker(" + std::to_string(instance.members.size()) + " members, nonmember " +
             std::to_string(instance.nonmember) + ", horizon " + std::to_string(instance.horizon) + ")";
    case GeneratorKind::Geometric:
      return "geometric(start " + start.frac_str() + ", ratio " + ratio.frac_str() + ")";
  }
  return "unknown";
}

AlphaSequence::AlphaSequence(GeneratorSpec spec) : spec_(std::move(spec)) {}

Dyadic AlphaSequence::at(std::size_t n) const {
  if (n == 0) throw std::invalid_argument("alpha terms are indexed from 1");
  std::lock_guard<std::mutex> lock(mu_);
  extend_to(n);
  return cache_[n - 1];
}

Dyadic AlphaSequence::at0(std::size_t n) const { return n == 0 ? Dyadic() : at(n); }

void AlphaSequence::extend_to(std::size_t n) const {
  while (cache_.size() < n) {
    const std::size_t k = cache_.size() + 1;
    const Dyadic prev = cache_.empty() ? Dyadic() : cache_.back();
    Dyadic term = next_term(k, prev);
    if (!(prev < term))
      throw MonotonicityViolation("term " + std::to_string(k) + " (" + term.frac_str() +
                                  ") does not exceed " + prev.frac_str());
    if (!(term < Dyadic(1)))
      throw MonotonicityViolation("term " + std::to_string(k) + " (" + term.frac_str() +
                                  ") left (0,1)");
    cache_.push_back(std::move(term));
  }
}

Dyadic AlphaSequence::next_term(std::size_t n, const Dyadic& prev) const {
  switch (spec_.kind) {
    case GeneratorKind::ExplicitList:
      if (n > spec_.terms.size())
        throw GeneratorExhausted("explicit list has only " + std::to_string(spec_.terms.size()) +
                                 " terms, term " + std::to_string(n) + " requested");
      return spec_.terms[n - 1];
    case GeneratorKind::Specker: {
      if (n > spec_.instance.max_time())
        throw GeneratorExhausted("enumeration stops at stage " +
                                 std::to_string(spec_.instance.max_time()) + ", term " +
                                 std::to_string(n) + " requested");
      Dyadic sum;
      for (const auto& m : spec_.instance.members)
        if (m.time <= n) sum = sum + Dyadic(Int(1), m.index + 2);
      return sum;
    }
    case GeneratorKind::Geometric:
      // a_n = a_{n-1} + start * ratio^{n-1}; the increment is carried exactly
      if (n == 1) return spec_.start;
      return prev + spec_.start * dpow(spec_.ratio, n - 1);
  }
  throw std::logic_error("unreachable generator kind");
}

std::pair<Dyadic, std::optional<Rational>> AlphaSequence::limit_bounds(std::size_t n) const {
  const Dyadic lower = at(n);
  switch (spec_.kind) {
    case GeneratorKind::ExplicitList:
      return {lower, std::nullopt};
    case GeneratorKind::Specker: {
      Rational total = 0;
      for (const auto& m : spec_.instance.members) total += pow2_rat(-long(m.index) - 2);
      return {lower, total};
    }
    case GeneratorKind::Geometric:
      return {lower, spec_.start.to_rational() / (Rational(1) - spec_.ratio.to_rational())};
  }
  throw std::logic_error("unreachable generator kind");
}

std::size_t AlphaSequence::available_terms() const {
  switch (spec_.kind) {
    case GeneratorKind::ExplicitList:
      return spec_.terms.size();
    case GeneratorKind::Specker:
      return spec_.instance.max_time();
    case GeneratorKind::Geometric:
      return kUnbounded;
  }
  return 0;
}

}  // namespace cantorlab
