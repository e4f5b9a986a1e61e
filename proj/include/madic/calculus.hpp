#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "madic/word.hpp"

namespace madic {

inline constexpr std::size_t kDefaultLevelCap = 1'000'000;
inline constexpr std::size_t kDefaultPortraitCap = 1'000'000;

// A vertex of the m-adic tree, given by its path from the root.
class Vertex {
 public:
  Vertex() = default;
  explicit Vertex(std::vector<int> path) : path_(std::move(path)) {}

  // Digit string such as "021"; requires m <= 10.
  static Vertex parse(const GroupParams& params, std::string_view digits);
  // (m-1)(m-1)...(m-1), the rightmost vertex of the given level.
  static Vertex rightmost(const GroupParams& params, int level);

  const std::vector<int>& path() const { return path_; }
  int level() const { return static_cast<int>(path_.size()); }
  bool is_root() const { return path_.empty(); }

  Vertex child(int x) const;
  Vertex concat(const Vertex& tail) const;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;

 private:
  std::vector<int> path_;
};

std::string to_string(const Vertex& v);
void check_vertex(const GroupParams& params, const Vertex& v);

// g = (g_0, ..., g_{m-1}) sigma^root_exponent; the tuple acts first.
struct WreathDecomposition {
  std::vector<Word> sections;
  int root_exponent = 0;
};

// Exponent sums of a_0 .. a_{s-1}; the image in G/G' = Z^s.
struct AbelianizationVector {
  std::vector<long long> exps;

  bool is_zero() const;
  bool is_sign_vector() const;
  friend bool operator==(const AbelianizationVector&, const AbelianizationVector&) = default;
};

// Action of an element on the m^n vertices of level n. Vertices are encoded
// as base-m integers with the first path entry most significant.
struct LevelPermutation {
  int level = 0;
  std::vector<std::uint32_t> images;

  static LevelPermutation identity(const GroupParams& params, int level);
  bool is_identity() const;
  // First this, then other.
  LevelPermutation then(const LevelPermutation& other) const;
  LevelPermutation inverse() const;
  friend bool operator==(const LevelPermutation&, const LevelPermutation&) = default;
};

std::uint32_t encode_vertex(const GroupParams& params, const Vertex& v);
Vertex decode_vertex(const GroupParams& params, int level, std::uint32_t code);

// Root labels of all sections at vertices of level < depth, in breadth-first
// order (level by level, each level lexicographic).
struct Portrait {
  int depth = 0;
  std::vector<Vertex> vertices;
  std::vector<int> labels;
};

// How a single letter decomposes: it shifts the root by `shift` and carries
// its only nontrivial section `section` at first-level vertex `position`.
struct LetterRecursion {
  int shift = 0;
  int position = 0;
  Letter section;
};

LetterRecursion letter_recursion(const GroupParams& params, Letter letter);

WreathDecomposition decompose(const GroupParams& params, const Word& w);
Word section(const GroupParams& params, const Word& w, int x);
Word section(const GroupParams& params, const Word& w, const Vertex& u);
Vertex act(const GroupParams& params, const Word& w, const Vertex& u);
int root_exponent(const GroupParams& params, const Word& w);
AbelianizationVector abelianize(const GroupParams& params, const Word& w);

// Decides the word problem. Every section of a word of length L is a word of
// length at most L, so the set of section words is finite; w is trivial iff
// all of them have zero abelianization (which forces a trivial root action).
bool is_identity(const GroupParams& params, const Word& w);
bool equal_elements(const GroupParams& params, const Word& lhs, const Word& rhs);

LevelPermutation level_permutation(const GroupParams& params, const Word& w, int n,
                                   std::size_t cap = kDefaultLevelCap);
Portrait portrait(const GroupParams& params, const Word& w, int depth,
                  std::size_t cap = kDefaultPortraitCap);

// Section of w^m at first-level vertex x, for any root exponent:
// w_x w_{x+i} w_{x+2i} ... (m factors) where i is the root exponent of w.
Word section_of_mth_power(const GroupParams& params, const Word& w, int x);

}  // namespace madic
