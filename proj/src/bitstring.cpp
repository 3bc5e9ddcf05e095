// SPDX-License-Identifier: Apache-2.0
#include "cantorlab/bitstring.hpp"

#include "cantorlab/errors.hpp"

namespace cantorlab {

BitString BitString::parse(std::string_view s) {
  BitString out;
  for (char c : s) {
    if (c != '0' && c != '1')
      throw ParseError("invalid bit '" + std::string(1, c) + "' in bit string '" + std::string(s) + "'");
    out.bits_ += c;
  }
  return out;
}

BitString BitString::extended(int b) const {
  BitString out = *this;
  out.append(b);
  return out;
}

BitString BitString::prefix(std::size_t n) const {
  BitString out;
  out.bits_ = bits_.substr(0, n);
  return out;
}

bool BitString::has_one_from(std::size_t from) const {
  for (std::size_t i = from; i < bits_.size(); ++i)
    if (bits_[i] == '1') return true;
  return false;
}

Int BitString::value() const {
  Int v = 0;
  for (char c : bits_) v = (v << 1) | (c == '1' ? 1 : 0);
  return v;
}

Dyadic BitString::tail_dyadic(std::size_t from) const {
  if (from >= bits_.size()) return Dyadic();
  Int v = 0;
  for (std::size_t i = from; i < bits_.size(); ++i) v = (v << 1) | (bits_[i] == '1' ? 1 : 0);
  return Dyadic(std::move(v), static_cast<unsigned>(bits_.size() - from));
}

}  // namespace cantorlab
