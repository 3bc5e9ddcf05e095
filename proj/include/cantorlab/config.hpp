// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cantorlab/alpha.hpp"
#include "cantorlab/ce_instance.hpp"
#include "cantorlab/dyadic.hpp"

namespace cantorlab {

/*
 * Flat INI-style lab configuration.  Sections and keys:
 *
 *   [alpha]       kind = geometric | explicit-list | specker
 *                 start, ratio   (geometric; dyadics in (0,1))
 *                 terms          (explicit-list; dyadics, space or comma split)
 *                 specker takes its enumeration from [ce]
 *   [ce]          members   ("index@stage" entries)
 *                 nonmember (index promised to stay out)
 *                 horizon   (stage bound)
 *   [experiment]  seed, max_depth, sample_count, eps (dyadic, e.g. 1/2^20)
 *
 * '#' comments anywhere; unknown sections or keys are rejected, as are keys
 * foreign to the chosen generator kind.
 */
struct LabConfig {
  GeneratorSpec alpha;
  CeInstance ce;
  std::uint64_t seed = 1;
  std::size_t max_depth = 48;
  std::size_t sample_count = 1000;
  Rational eps = pow2_rat(-20);
};

LabConfig default_config();
LabConfig parse_config(std::istream& in, const std::string& origin);
LabConfig load_config(const std::string& path);

}  // namespace cantorlab
