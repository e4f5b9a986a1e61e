#pragma once

#include <vector>

#include "madic/calculus.hpp"
#include "madic/word.hpp"

namespace madic {

// The generators a_0, ..., a_{s-1} of the generalised Basilica group over the
// m-adic odometer.
struct GeneratorFamily {
  GroupParams params;
  std::vector<Word> generators;

  explicit GeneratorFamily(const GroupParams& p);
};

// Checks a_0 = (1,...,1,a_{s-1}) sigma and a_i = (1,...,1,a_{i-1}); for
// (m, s) = (2, 2) also the classical a = (1, b), b = (1, a) sigma with
// a = a_1 and b = a_0.
bool verify_generator_recursions(const GroupParams& params);

// A first-level stabilising word whose section at m-1 equals a_i.
Word fractality_witness(const GroupParams& params, int i);

// Orbit of 0...0 under the level-n actions of the generators is the layer.
bool check_spherical_transitivity(const GroupParams& params, int n,
                                  std::size_t cap = kDefaultLevelCap);

}  // namespace madic
