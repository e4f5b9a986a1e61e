#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "madic/calculus.hpp"
#include "madic/word.hpp"

namespace madic {

struct BallOptions {
  int prefilter_depth = 4;
  std::size_t element_cap = 500'000;
  // Keep every BFS edge between consecutive spheres so that all geodesic
  // words of an element can be listed, not just the stored one.
  bool record_all_geodesics = false;
};

struct BallElement {
  Word geodesic;
  int length = 0;
};

/// All group elements of word length at most `radius`, one canonical geodesic
/// per element. Candidates are bucketed by (abelianization, level-D
/// permutation) and then separated exactly with is_identity.
class CayleyBall {
 public:
  const GroupParams& params() const { return params_; }
  int radius() const { return radius_; }
  const std::vector<BallElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  std::optional<std::size_t> locate(const Word& w) const;
  std::optional<int> length_of(const Word& w) const;

  // Every geodesic word of the element; needs record_all_geodesics.
  std::vector<Word> all_geodesics(std::size_t index) const;

 private:
  friend CayleyBall enumerate_ball(const GroupParams&, int, const BallOptions&);

  struct Key {
    std::vector<long long> abel;
    std::vector<std::uint32_t> perm;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  CayleyBall(const GroupParams& params, const BallOptions& options);
  Key key_of(const Word& w) const;
  std::optional<std::size_t> find(const Key& key, const Word& w) const;

  GroupParams params_;
  BallOptions options_;
  int radius_ = 0;
  std::vector<BallElement> elements_;
  std::vector<LevelPermutation> perms_;
  std::vector<LevelPermutation> letter_perms_;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets_;
  std::vector<std::vector<std::pair<std::size_t, Letter>>> predecessors_;
};

CayleyBall enumerate_ball(const GroupParams& params, int radius, const BallOptions& options = {});

// |g| for the element of w, when it is at most radius_cap.
std::optional<int> geodesic_length(const GroupParams& params, const Word& w, int radius_cap,
                                   const BallOptions& options = {});

struct LemmaReport {
  std::string lemma;
  std::size_t instances_checked = 0;
  std::vector<std::string> violations;
  std::size_t unverified = 0;

  bool ok() const { return violations.empty() && unverified == 0; }
};

struct LengthLemmaOptions {
  BallOptions ball;
  // Check the a_0 ... a_0^{-1} lemma over all geodesics (radius <= 4).
  bool all_geodesics = false;
};

// Reports for the section-length bound, the m-th power bound, the strict
// drop for geodesics containing a_0 before a_0^{-1}, and BFS consistency.
std::vector<LemmaReport> verify_length_lemmas(const GroupParams& params, int radius,
                                              const LengthLemmaOptions& options = {});
std::vector<LemmaReport> verify_length_lemmas(const CayleyBall& ball,
                                              bool all_geodesics = false);

}  // namespace madic
