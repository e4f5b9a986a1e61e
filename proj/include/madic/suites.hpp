#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "madic/geodesics.hpp"
#include "madic/word.hpp"

namespace madic {

// Reduced word with length drawn uniformly from [min_length, max_length]
// (free cancellation is avoided while drawing, so the length is exact).
Word random_word(std::mt19937_64& rng, const GroupParams& params, int min_length, int max_length);

// Product of 1..max_commutators commutators [u, v] of words of length
// 1..max_length; always in G'.
Word random_noise(std::mt19937_64& rng, const GroupParams& params, int max_commutators = 3,
                  int max_length = 3);

// Random sign vector and permutation, times random_noise.
Word random_noisy_permuted_product(std::mt19937_64& rng, const GroupParams& params,
                                   int max_commutators = 3);

struct SuiteOptions {
  int radius = 4;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  BallOptions ball;
};

const std::vector<std::string>& suite_names();

// One of: lengths, congruence, projection, alignment, transitivity,
// recursions. Unknown names throw ParameterMismatch.
std::vector<LemmaReport> run_suite(const GroupParams& params, const std::string& name,
                                   const SuiteOptions& options = {});

}  // namespace madic
