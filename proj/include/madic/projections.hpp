#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "madic/calculus.hpp"
#include "madic/word.hpp"

namespace madic {

/// a_{pi[s-1]}^{e} ... a_{pi[0]}^{e}: every generator exactly once, exponent
/// signs[index] on a_index.
struct PermutedProduct {
  std::vector<int> pi;
  std::vector<int> signs;

  Word word() const;
  // Recovers pi and signs from a word using every index once with +-1.
  static std::optional<PermutedProduct> from_word(const GroupParams& params, const Word& w);
  friend bool operator==(const PermutedProduct&, const PermutedProduct&) = default;
};

// All s! permuted products with the given sign vector, pi in lexicographic order.
std::vector<PermutedProduct> permuted_products(const GroupParams& params,
                                               const std::vector<int>& signs);

// Replaces every index i by (i - r) mod s.
Word shift_indices(const GroupParams& params, const Word& w, int r);

// Sections of g^m by the product formula when gcd(i, m) = 1 for the root
// exponent i; for i = 0 the first-level sections of g itself.
std::vector<Word> power_sections(const GroupParams& params, const Word& w);

// Section at (m-1)^j of g^{m^j}.
Word rightmost_projection(const GroupParams& params, const Word& w, int j);

// Every section of g^{m^j} at level j is congruent mod G' to g with indices
// shifted by j mod s.
bool shifted_congruence_check(const GroupParams& params, const Word& w, int j);

struct AlignmentResult {
  Vertex vertex;
  Word word;
  int power_exponent = 0;  // the section is taken of g^{m^power_exponent}
};

// A vertex of level divisible by s where a power of prod has a cyclic
// rotation of prod ending with a_target as its section.
AlignmentResult cyclic_alignment(const GroupParams& params, const PermutedProduct& prod,
                                 int target);

struct Budget {
  int max_level = 0;  // 0 means 3 * s * s
  std::size_t max_equality_tests = 100'000;
};

struct NormalizationWitness {
  Vertex vertex;
  int exponent_j = 0;  // certificate = input^{m^exponent_j}
  PermutedProduct result;
  Word certificate;
};

// Finds a vertex u of level divisible by s and a power g' of the input that
// fixes u and whose section at u is a permuted product.
NormalizationWitness normalize_to_permuted_product(const GroupParams& params, const Word& w,
                                                   const Budget& budget = {});

bool verify_witness(const GroupParams& params, const Word& input,
                    const NormalizationWitness& witness);

// Tests h against every permuted product with the sign pattern of its
// abelianization. Counts equality tests in *tests when given.
std::optional<PermutedProduct> recognize_permuted_product(const GroupParams& params,
                                                          const Word& h,
                                                          std::size_t* tests = nullptr);

// Section of w^{m^t} at u, computed one level at a time.
Word power_section_along(const GroupParams& params, const Word& w, const Vertex& u, int t);

}  // namespace madic
