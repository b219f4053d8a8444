#pragma once

// Built-in weight families used by the sweeps, each paired with the
// reference implementation of the same sequence.

#include <string>
#include <vector>

#include "reference.hpp"
#include "urnlab/weights.hpp"

namespace support {

struct FamilyCase {
  std::string name;
  urnlab::WeightSequence seq;
  ref::Weight ref;
};

inline std::vector<FamilyCase> families() {
  using urnlab::WeightSequence;
  return {
      {"linear:1", WeightSequence::linear(1), ref::linear(1)},
      {"linear:2", WeightSequence::linear(2), ref::linear(2)},
      {"power:2:3", WeightSequence::power(2, 3), ref::cube(2)},
      {"square", WeightSequence::square(), ref::square()},
      {"triangular", WeightSequence::triangular(), ref::triangular()},
      {"shifted-square", WeightSequence::shifted_square(), ref::shifted_square()},
  };
}

}  // namespace support
