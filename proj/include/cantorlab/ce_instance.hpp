// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace cantorlab {

/*
 * Finite stand-in for a computably enumerable set: the indices that ever get
 * enumerated, each stamped with the stage at which it appears.  `nonmember`
 * is an index promised to stay out forever; `horizon` bounds the stages a
 * consumer may wait through before concluding desk-scale non-membership.
 */
struct CeInstance {
  struct Member {
    unsigned index;
    unsigned time;  // enumeration stage, >= 1
  };

  std::vector<Member> members;
  unsigned nonmember = 0;
  unsigned horizon = 24;

  void validate() const;  // ConfigError on duplicate indices, bad stamps, ...
  const Member* find(unsigned index) const;
  bool is_member(unsigned index) const { return find(index) != nullptr; }
  unsigned max_time() const;          // 0 when empty
  unsigned max_member_index() const;  // 0 when empty
};

}  // namespace cantorlab
