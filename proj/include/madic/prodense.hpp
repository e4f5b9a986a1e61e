#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "madic/calculus.hpp"
#include "madic/projections.hpp"
#include "madic/word.hpp"

namespace madic {

// g = a_{s-1}...a_0 z and h_j = a_{s-1}...a_{j+1} a_j^-1 a_{j-1}...a_0 z_j.
// noise holds z, z_0, ..., z_{s-1}; each must lie in G'.
std::vector<Word> make_prodense_seeds(const GroupParams& params, const std::vector<Word>& noise);
std::vector<Word> make_prodense_seeds(const GroupParams& params);

// True when w has 1 <= |w| <= s letters with pairwise distinct indices.
bool is_part(const GroupParams& params, const Word& w);

enum class StepKind { Seed, Descend, Multiply };

// One primitive ledger entry: `word` is certified to lie in H_vertex.
//   Seed:     word is seeds[seed], at the root.
//   Descend:  word = section of input^(m^power) at digit, which it must fix.
//   Multiply: word = left^left_exponent * right^right_exponent (right may be
//             -1 for the identity), all at the same vertex.
struct Step {
  StepKind kind = StepKind::Seed;
  Vertex vertex;
  Word word;
  int seed = -1;
  int input = -1;
  int digit = 0;
  int power = 0;
  int left = -1;
  int left_exponent = 1;
  int right = -1;
  int right_exponent = 1;
};

struct Move {
  std::string kind;
  std::string detail;
  std::size_t first_step = 0;  // steps [first_step, last_step) belong to the move
  std::size_t last_step = 0;
  std::vector<int> inputs;
  std::vector<int> outputs;
  bool verified = false;
};

struct Transcript {
  explicit Transcript(const GroupParams& p) : params(p) {}

  GroupParams params;
  std::vector<Word> seeds;
  std::vector<Step> steps;
  std::vector<Move> moves;
  Vertex final_vertex;
  std::vector<int> final_parts;
  std::string status = "running";
  std::string failure;

  bool complete() const { return status == "complete"; }
  std::vector<Word> final_words() const;
};

struct ReplayReport {
  bool ok = true;
  std::size_t steps_checked = 0;
  std::vector<std::string> failures;
};

// Re-verifies every step from the seeds, the move bookkeeping and, for a
// complete transcript, that the final parts are a_0, ..., a_{s-1} at
// final_vertex.
ReplayReport replay(const Transcript& transcript);

// A ledger member together with its level below the state's base vertex
// along the rightmost path.
struct CertifiedPart {
  Word word;
  int step = -1;
  int level = 0;
};

enum class Situation { I, II };

class SplitState {
 public:
  explicit SplitState(const GroupParams& params);

  const GroupParams& params() const { return transcript_.params; }
  const Transcript& transcript() const { return transcript_; }
  Transcript& transcript() { return transcript_; }
  const Vertex& base() const { return base_; }
  // Deepest level reached by any certified part.
  int level() const { return level_; }

  CertifiedPart admit_seed(const Word& w);

  // Primitive steps; each checks its own claim before recording it.
  int descend(int input, int digit, int power);
  int multiply(int left, int left_exponent, int right, int right_exponent);
  int multiply_as(int left, int left_exponent, int right, int right_exponent, const Word& claimed);

  // Later CertifiedPart levels are measured from this vertex.
  void set_base(const Vertex& base);

  // Projects along the rightmost path down to `level`, one level at a time.
  CertifiedPart carry(const CertifiedPart& part, int level);
  CertifiedPart invert(const CertifiedPart& part);

  bool in_move() const { return in_move_; }
  void begin_move(std::string kind, std::string detail, std::vector<int> inputs = {});
  void end_move(std::vector<int> outputs);

 private:
  Transcript transcript_;
  Vertex base_;
  int level_ = 0;
  bool in_move_ = false;
};

struct SplitResult {
  CertifiedPart first;   // beta-tilde
  CertifiedPart second;  // a_j^-1 beta-hat for (i), beta-hat a_j^-1 for (ii)
};

// Situation (i): alpha ends with a_j, beta = bt a_j^-1 bh.
// Situation (ii): alpha starts with a_j, beta = bh a_j^-1 bt.
// The pivot j is read off alpha. Both outputs are certified at
// max(alpha.level, beta.level) + s. Records its own move unless called
// inside an open one.
SplitResult split_step(SplitState& state, Situation situation, const CertifiedPart& alpha,
                       const CertifiedPart& beta);

// Runs normalization, alignment and splitting on g, h_0, ..., h_{s-1}.
// Status is "complete", "exhausted" (a budget or the round bound ran out)
// or "failed" (no split applies); the partial transcript is still
// replayable. Malformed seeds throw.
Transcript isolate_generators(const GroupParams& params, const std::vector<Word>& seeds,
                              const Budget& budget = {});

}  // namespace madic
