// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cantorlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input text (CLI argument, level file, rect string) failed to parse.
struct ParseError : Error {
  using Error::Error;
};

// Config file is syntactically fine but semantically invalid.
struct ConfigError : Error {
  using Error::Error;
};

// strip_partition was asked for breaks that don't partition the interval.
struct PartitionError : Error {
  using Error::Error;
};

// A finite generator was asked for a term beyond what it can supply.
struct GeneratorExhausted : Error {
  using Error::Error;
};

// A generator produced a term that is not strictly increasing inside (0,1).
struct MonotonicityViolation : Error {
  using Error::Error;
};

// Conditional value requested on a prefix of zero marginal mass.
struct ZeroMarginal : Error {
  using Error::Error;
};

// Certification loop cannot tighten an enclosure to the requested width.
struct PrecisionUnreachable : Error {
  using Error::Error;
};

// Membership decoding ran out of oracle precision or query budget.
struct OracleExhausted : Error {
  using Error::Error;
};

}  // namespace cantorlab
