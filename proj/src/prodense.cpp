#include "madic/prodense.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include "madic/errors.hpp"

namespace madic {

namespace {

constexpr int kMaxStepPower = 20;

long long int_pow(int base, int exponent) {
  long long out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

Word letter_word(int index, int exponent) { return Word{Letter{index, exponent}}; }

std::optional<std::size_t> find_letter(const Word& w, Letter l) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == l) return i;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Word> make_prodense_seeds(const GroupParams& params, const std::vector<Word>& noise) {
  const int s = params.s;
  if (noise.size() != static_cast<std::size_t>(s + 1)) {
    throw ParameterMismatch("seed noise needs s+1 words, got " + std::to_string(noise.size()));
  }
  for (const Word& z : noise) {
    check_word(params, z);
    if (!abelianize(params, z).is_zero()) {
      throw PreconditionError("seed noise " + to_string(z) + " has nonzero abelianization");
    }
  }
  std::vector<Word> seeds;
  for (int j = -1; j < s; ++j) {
    Word w;
    for (int i = s - 1; i >= 0; --i) w.push_back({i, i == j ? -1 : 1});
    w.append(noise[static_cast<std::size_t>(j + 1)]);
    seeds.push_back(std::move(w));
  }
  return seeds;
}

std::vector<Word> make_prodense_seeds(const GroupParams& params) {
  return make_prodense_seeds(params, std::vector<Word>(static_cast<std::size_t>(params.s + 1)));
}

bool is_part(const GroupParams& params, const Word& w) {
  if (w.empty() || w.size() > static_cast<std::size_t>(params.s)) return false;
  std::vector<bool> seen(static_cast<std::size_t>(params.s), false);
  for (const Letter& l : w.letters()) {
    if (l.index < 0 || l.index >= params.s || seen[static_cast<std::size_t>(l.index)]) return false;
    seen[static_cast<std::size_t>(l.index)] = true;
  }
  return true;
}

std::vector<Word> Transcript::final_words() const {
  std::vector<Word> out;
  for (int id : final_parts) out.push_back(steps.at(static_cast<std::size_t>(id)).word);
  return out;
}

// ---------------------------------------------------------------------------
// Ledger

SplitState::SplitState(const GroupParams& params) : transcript_(params) {}

CertifiedPart SplitState::admit_seed(const Word& w) {
  check_word(params(), w);
  Step step;
  step.kind = StepKind::Seed;
  step.word = w;
  step.seed = static_cast<int>(transcript_.seeds.size());
  transcript_.seeds.push_back(w);
  transcript_.steps.push_back(std::move(step));
  return {w, static_cast<int>(transcript_.steps.size()) - 1, 0};
}

int SplitState::descend(int input, int digit, int power_exp) {
  const GroupParams& p = params();
  const Step& x = transcript_.steps.at(static_cast<std::size_t>(input));
  if (digit < 0 || digit >= p.m) throw ParameterMismatch("digit out of range");
  if (power_exp < 0 || power_exp > kMaxStepPower) throw PreconditionError("descend power out of range");
  const Word y = power_exp == 0 ? x.word : power(x.word, int_pow(p.m, power_exp));
  if (root_exponent(p, y) != 0) {
    throw PreconditionError("descend: " + to_string(x.word) + " does not fix the first-level vertex");
  }
  Step step;
  step.kind = StepKind::Descend;
  step.vertex = x.vertex.child(digit);
  step.word = section(p, y, digit);
  step.input = input;
  step.digit = digit;
  step.power = power_exp;
  transcript_.steps.push_back(std::move(step));
  return static_cast<int>(transcript_.steps.size()) - 1;
}

int SplitState::multiply(int left, int left_exponent, int right, int right_exponent) {
  const Step& l = transcript_.steps.at(static_cast<std::size_t>(left));
  Word out = left_exponent > 0 ? l.word : l.word.inverse();
  if (right >= 0) {
    const Step& r = transcript_.steps.at(static_cast<std::size_t>(right));
    if (r.vertex != l.vertex) throw PreconditionError("multiply: operands live at different vertices");
    out.append(right_exponent > 0 ? r.word : r.word.inverse());
  }
  return multiply_as(left, left_exponent, right, right_exponent, out);
}

int SplitState::multiply_as(int left, int left_exponent, int right, int right_exponent,
                            const Word& claimed) {
  const GroupParams& p = params();
  const Step& l = transcript_.steps.at(static_cast<std::size_t>(left));
  if (std::abs(left_exponent) != 1 || std::abs(right_exponent) != 1) {
    throw PreconditionError("multiply exponents must be +-1");
  }
  Word product = left_exponent > 0 ? l.word : l.word.inverse();
  if (right >= 0) {
    const Step& r = transcript_.steps.at(static_cast<std::size_t>(right));
    if (r.vertex != l.vertex) throw PreconditionError("multiply: operands live at different vertices");
    product.append(right_exponent > 0 ? r.word : r.word.inverse());
  }
  if (product != claimed && !equal_elements(p, product, claimed)) {
    throw CertificationError("multiply: claimed " + to_string(claimed) + " differs from " +
                             to_string(product));
  }
  Step step;
  step.kind = StepKind::Multiply;
  step.vertex = l.vertex;
  step.word = claimed;
  step.left = left;
  step.left_exponent = left_exponent;
  step.right = right;
  step.right_exponent = right_exponent;
  transcript_.steps.push_back(std::move(step));
  return static_cast<int>(transcript_.steps.size()) - 1;
}

void SplitState::set_base(const Vertex& base) {
  base_ = base;
  level_ = 0;
}

CertifiedPart SplitState::carry(const CertifiedPart& part, int level) {
  if (level < part.level) throw PreconditionError("cannot carry a part upwards");
  const GroupParams& p = params();
  if (transcript_.steps.at(static_cast<std::size_t>(part.step)).vertex !=
      base_.concat(Vertex::rightmost(p, part.level))) {
    throw PreconditionError("part is not on the rightmost path at its recorded level");
  }
  CertifiedPart cur = part;
  while (cur.level < level) {
    const int t = root_exponent(p, cur.word) == 0 ? 0 : 1;
    const int id = descend(cur.step, p.m - 1, t);
    cur = {transcript_.steps[static_cast<std::size_t>(id)].word, id, cur.level + 1};
  }
  level_ = std::max(level_, cur.level);
  return cur;
}

CertifiedPart SplitState::invert(const CertifiedPart& part) {
  const int id = multiply(part.step, -1, -1, 1);
  return {transcript_.steps[static_cast<std::size_t>(id)].word, id, part.level};
}

void SplitState::begin_move(std::string kind, std::string detail, std::vector<int> inputs) {
  if (in_move_) throw PreconditionError("moves do not nest");
  Move move;
  move.kind = std::move(kind);
  move.detail = std::move(detail);
  move.first_step = transcript_.steps.size();
  move.inputs = std::move(inputs);
  transcript_.moves.push_back(std::move(move));
  in_move_ = true;
}

void SplitState::end_move(std::vector<int> outputs) {
  if (!in_move_) throw PreconditionError("no open move");
  Move& move = transcript_.moves.back();
  move.last_step = transcript_.steps.size();
  move.outputs = std::move(outputs);
  // Every step was checked as it was recorded.
  move.verified = true;
  in_move_ = false;
}

// ---------------------------------------------------------------------------
// Splitting

SplitResult split_step(SplitState& state, Situation situation, const CertifiedPart& alpha,
                       const CertifiedPart& beta) {
  const GroupParams& p = state.params();
  const int s = p.s;
  if (!is_part(p, alpha.word) || !is_part(p, beta.word)) {
    throw PreconditionError("split inputs must be words with distinct indices and length <= s");
  }
  const Letter pivot = situation == Situation::I ? alpha.word.back() : alpha.word.front();
  if (pivot.exponent != 1) {
    throw PreconditionError("alpha must " + std::string(situation == Situation::I ? "end" : "start") +
                            " with a positive letter");
  }
  const int j = pivot.index;
  const auto k = find_letter(beta.word, pivot.inverse());
  if (!k) throw PreconditionError("beta does not contain a_" + std::to_string(j) + "^-1");
  Word bt;
  Word bh;
  if (situation == Situation::I) {
    bt = beta.word.subword(0, *k);
    bh = beta.word.subword(*k + 1, beta.word.size());
  } else {
    bh = beta.word.subword(0, *k);
    bt = beta.word.subword(*k + 1, beta.word.size());
  }
  if (bt.empty()) throw PreconditionError("split would leave an empty piece of beta");
  if ((alpha.level - beta.level) % s != 0) {
    throw PreconditionError("alpha and beta must sit at levels congruent mod s");
  }

  const bool own_move = !state.in_move();
  if (own_move) {
    state.begin_move(situation == Situation::I ? "split-i" : "split-ii",
                     "alpha=" + to_string(alpha.word) + " beta=" + to_string(beta.word) +
                         " pivot=a_" + std::to_string(j),
                     {alpha.step, beta.step});
  }
  const int n = std::max(alpha.level, beta.level);
  const CertifiedPart a = state.carry(state.carry(alpha, n), n + j);
  const CertifiedPart b = state.carry(state.carry(beta, n), n + j);
  const int product = situation == Situation::I ? state.multiply(b.step, 1, a.step, 1)
                                                : state.multiply(a.step, 1, b.step, 1);
  const int cut = state.descend(product, p.m - 1, 0);
  const Transcript& t = state.transcript();
  CertifiedPart first{t.steps[static_cast<std::size_t>(cut)].word, cut, n + j + 1};
  if (!equal_elements(p, first.word, shift_indices(p, bt, j + 1))) {
    throw CertificationError("split: section of the product is " + to_string(first.word));
  }
  first = state.carry(first, n + s);
  if (first.word != bt) {
    const int id = state.multiply_as(first.step, 1, -1, 1, bt);
    first = {bt, id, n + s};
  }
  const CertifiedPart b_s = state.carry(beta, n + s);
  if (b_s.word != beta.word) throw CertificationError("carrying beta by s levels changed it");
  CertifiedPart second;
  if (situation == Situation::I) {
    Word expected = letter_word(j, -1);
    expected.append(bh);
    second = {expected, state.multiply_as(first.step, -1, b_s.step, 1, expected), n + s};
  } else {
    Word expected = bh;
    expected.push_back({j, -1});
    second = {expected, state.multiply_as(b_s.step, 1, first.step, -1, expected), n + s};
  }
  if (own_move) state.end_move({first.step, second.step});
  return {first, second};
}

// ---------------------------------------------------------------------------
// Engine

namespace {

struct Family {
  std::string name;
  std::vector<CertifiedPart> parts;
  bool active = false;

  Word word() const {
    Word w;
    for (const CertifiedPart& part : parts) w.append(part.word);
    return w;
  }
};

struct Cut {
  Situation situation;
  int pivot;
  std::size_t alpha_family, alpha_part;
  bool alpha_inverted;
  std::size_t beta_family, beta_part;
  bool beta_inverted;
  std::size_t beta_length;
  std::size_t alpha_length;

  auto key() const {
    return std::make_tuple(alpha_length == 1 ? 1 : 0, pivot, beta_length,
                           situation == Situation::I ? 0 : 1, beta_family, beta_part, beta_inverted,
                           alpha_family, alpha_part, alpha_inverted);
  }
};

std::string letter_text(const Letter& l) { return to_string(Word{l}); }

class Engine {
 public:
  Engine(const GroupParams& params, const Budget& budget) : params_(params), budget_(budget), state_(params) {}

  Transcript run(const std::vector<Word>& seeds);

 private:
  void normalize_seeds(const std::vector<Word>& seeds);
  int transport(int member, const Vertex& u);
  int canonicalize(int member, const Word& expected);

  void open_split();
  std::optional<Cut> find_cut() const;
  void apply_cut(const Cut& cut, std::string kind, std::string detail);
  bool endpoint_analysis();
  bool isolated() const;
  void collect();

  const Word& word_of(int step) const {
    return state_.transcript().steps[static_cast<std::size_t>(step)].word;
  }

  GroupParams params_;
  Budget budget_;
  SplitState state_;
  std::vector<int> members_;
  std::vector<Family> families_;
};

int Engine::transport(int member, const Vertex& u) {
  for (int digit : u.path()) member = state_.descend(member, digit, 1);
  return member;
}

int Engine::canonicalize(int member, const Word& expected) {
  if (word_of(member) == expected) return member;
  return state_.multiply_as(member, 1, -1, 1, expected);
}

void Engine::normalize_seeds(const std::vector<Word>& seeds) {
  for (const Word& w : seeds) members_.push_back(state_.admit_seed(w).step);

  for (std::size_t i = 0; i < members_.size(); ++i) {
    const std::string name = i == 0 ? "g" : "h_" + std::to_string(i - 1);
    const Word current = word_of(members_[i]);
    const NormalizationWitness witness = normalize_to_permuted_product(params_, current, budget_);
    state_.begin_move("seed-normalization",
                      name + " " + to_string(current) + " -> " + to_string(witness.result.word()) +
                          " at vertex '" + to_string(witness.vertex) + "'",
                      {members_[i]});
    members_[i] = canonicalize(transport(members_[i], witness.vertex), witness.result.word());
    state_.end_move({members_[i]});
    if (witness.vertex.is_root()) continue;

    state_.begin_move("transport", "members follow " + name + " to '" + to_string(witness.vertex) + "'");
    std::vector<int> outputs;
    for (std::size_t k = 0; k < members_.size(); ++k) {
      if (k == i) continue;
      members_[k] = transport(members_[k], witness.vertex);
    }
    for (std::size_t k = 0; k < i; ++k) {
      const auto pp = recognize_permuted_product(params_, word_of(members_[k]));
      if (!pp) throw CertificationError("transported member is no longer a permuted product");
      members_[k] = canonicalize(members_[k], pp->word());
    }
    for (int id : members_) outputs.push_back(id);
    state_.end_move(outputs);
  }

  const Word g = word_of(members_[0]);
  if (g.back() == Letter{0, 1}) return;
  const auto prod = PermutedProduct::from_word(params_, g);
  const AlignmentResult aligned = cyclic_alignment(params_, *prod, 0);
  state_.begin_move("cyclic-alignment",
                    "g " + to_string(g) + " -> " + to_string(aligned.word) + " at vertex '" +
                        to_string(aligned.vertex) + "' with power exponent " +
                        std::to_string(aligned.power_exponent),
                    {members_[0]});
  int remaining = aligned.power_exponent;
  const auto& path = aligned.vertex.path();
  for (std::size_t d = 0; d < path.size(); ++d) {
    int t = 0;
    if (d + 1 == path.size()) {
      t = remaining;
    } else if (remaining > 0) {
      t = 1;
      --remaining;
    }
    members_[0] = state_.descend(members_[0], path[d], t);
  }
  members_[0] = canonicalize(members_[0], aligned.word);
  for (std::size_t k = 1; k < members_.size(); ++k) {
    members_[k] = transport(members_[k], aligned.vertex);
    const auto pp = recognize_permuted_product(params_, word_of(members_[k]));
    if (!pp) throw CertificationError("transported member is no longer a permuted product");
    members_[k] = canonicalize(members_[k], pp->word());
  }
  state_.end_move(std::vector<int>(members_.begin(), members_.end()));
}

void Engine::apply_cut(const Cut& cut, std::string kind, std::string detail) {
  Family& bf = families_[cut.beta_family];
  const CertifiedPart alpha_part = families_[cut.alpha_family].parts[cut.alpha_part];
  const CertifiedPart beta_part = bf.parts[cut.beta_part];
  state_.begin_move(std::move(kind), std::move(detail), {alpha_part.step, beta_part.step});
  const CertifiedPart alpha = cut.alpha_inverted ? state_.invert(alpha_part) : alpha_part;
  const CertifiedPart beta = cut.beta_inverted ? state_.invert(beta_part) : beta_part;
  const SplitResult r = split_step(state_, cut.situation, alpha, beta);
  std::vector<CertifiedPart> pieces;
  if (!cut.beta_inverted) {
    if (cut.situation == Situation::I) {
      pieces = {r.first, r.second};
    } else {
      pieces = {r.second, r.first};
    }
  } else if (cut.situation == Situation::I) {
    pieces = {state_.invert(r.second), state_.invert(r.first)};
  } else {
    pieces = {state_.invert(r.first), state_.invert(r.second)};
  }
  Word joined = pieces[0].word;
  joined.append(pieces[1].word);
  if (joined != beta_part.word) throw CertificationError("split pieces do not reassemble the part");
  bf.parts.erase(bf.parts.begin() + static_cast<std::ptrdiff_t>(cut.beta_part));
  bf.parts.insert(bf.parts.begin() + static_cast<std::ptrdiff_t>(cut.beta_part), pieces.begin(),
                  pieces.end());
  state_.end_move({pieces[0].step, pieces[1].step});
}

void Engine::open_split() {
  const Word g = families_[0].word();
  const Word h0 = families_[1].word();
  const int s = params_.s;
  const auto pos = find_letter(h0, Letter{0, -1});
  const int d = static_cast<int>(*pos) + 1;
  Cut cut{Situation::I, 0, 0, 0, false, 1, 0, false, h0.size(), g.size()};
  std::ostringstream detail;
  detail << "g=" << to_string(g) << " h_0=" << to_string(h0) << " d=" << d;
  std::string label;
  if (d == 1) {
    label = "case-2";
    cut.situation = Situation::II;
    cut.pivot = g.front().index;
    cut.beta_inverted = true;
    detail << " pivot=a_" << cut.pivot;
  } else if (d == s) {
    label = "case-3";
  } else {
    label = "case-1";
    const int j = h0[static_cast<std::size_t>(d - 2)].index;
    const int r = static_cast<int>(*find_letter(g, Letter{j, 1})) + 1;
    detail << " j=" << j << " r=" << r;
    if (r == 1) {
      detail << " subcase=b";
    } else if (r == s - 1) {
      detail << " subcase=c";
    } else {
      const int k = g.front().index;
      const auto qpos = find_letter(h0, Letter{k, 1});
      const int q = static_cast<int>(*qpos) + 1;
      detail << " subcase=a k=" << k << " q=" << q << (q <= d - 2 ? " side=prefix" : " side=suffix")
             << (q == 1 ? " branch=q=1" : " branch=q>1");
    }
  }
  apply_cut(cut, cut.situation == Situation::I ? "split-i" : "split-ii", label + " " + detail.str());
}

std::optional<Cut> Engine::find_cut() const {
  std::optional<Cut> best;
  for (std::size_t bfi = 0; bfi < families_.size(); ++bfi) {
    if (!families_[bfi].active) continue;
    const auto& bparts = families_[bfi].parts;
    for (std::size_t bpi = 0; bpi < bparts.size(); ++bpi) {
      const Word& p = bparts[bpi].word;
      if (p.size() < 2) continue;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const Letter l = p[k];
        const bool beta_inverted = l.exponent > 0;
        // In beta's orientation the letter reads a_j^-1. Situation (i) cuts
        // before it and (ii) after it; on p^-1 these sides swap.
        for (Situation situation : {Situation::I, Situation::II}) {
          const bool cut_before_in_p = (situation == Situation::I) != beta_inverted;
          if (cut_before_in_p ? k == 0 : k + 1 == p.size()) continue;
          for (std::size_t afi = 0; afi < families_.size(); ++afi) {
            if (!families_[afi].active) continue;
            const auto& aparts = families_[afi].parts;
            for (std::size_t api = 0; api < aparts.size(); ++api) {
              if (afi == bfi && api == bpi) continue;
              const Word& q = aparts[api].word;
              for (bool alpha_inverted : {false, true}) {
                // alpha must end (i) or start (ii) with a_j^{+1}.
                const bool want_end = situation == Situation::I;
                const Letter edge = (want_end != alpha_inverted) ? q.back() : q.front();
                const Letter needed{l.index, alpha_inverted ? -1 : 1};
                if (edge != needed) continue;
                Cut cut{situation, l.index, afi, api, alpha_inverted, bfi, bpi, beta_inverted,
                        p.size(), q.size()};
                if (!best || cut.key() < best->key()) best = cut;
              }
            }
          }
        }
      }
    }
  }
  return best;
}

bool Engine::isolated() const {
  std::vector<bool> seen(static_cast<std::size_t>(params_.s), false);
  for (const Family& f : families_) {
    if (!f.active) continue;
    for (const CertifiedPart& part : f.parts) {
      if (part.word.size() == 1) seen[static_cast<std::size_t>(part.word[0].index)] = true;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool Engine::endpoint_analysis() {
  auto endpoints = [](const Family& f) {
    std::string out = "{";
    bool first = true;
    for (const CertifiedPart& part : f.parts) {
      if (part.word.size() < 2) continue;
      if (!first) out += ", ";
      first = false;
      out += "(" + letter_text(part.word.front()) + ", " + letter_text(part.word.back()) + ")";
    }
    return out + "}";
  };
  std::optional<int> chosen;
  for (const CertifiedPart& part : families_[0].parts) {
    if (part.word.size() < 2) continue;
    const int e = part.word.front().index;
    if (!families_[static_cast<std::size_t>(e) + 1].active && (!chosen || e < *chosen)) chosen = e;
  }
  if (!chosen) {
    // No g-part offers a fresh left endpoint; fall back to any index still
    // inside a long part.
    for (const Family& f : families_) {
      if (!f.active) continue;
      for (const CertifiedPart& part : f.parts) {
        if (part.word.size() < 2) continue;
        for (const Letter& l : part.word.letters()) {
          if (!families_[static_cast<std::size_t>(l.index) + 1].active && (!chosen || l.index < *chosen)) {
            chosen = l.index;
          }
        }
      }
    }
  }
  if (!chosen) return false;
  Family& fresh = families_[static_cast<std::size_t>(*chosen) + 1];
  state_.begin_move("endpoint-analysis", "E_g=" + endpoints(families_[0]) + " E_h_0=" +
                                             endpoints(families_[1]) + " activate " + fresh.name,
                    {fresh.parts.front().step});
  fresh.active = true;
  state_.end_move({fresh.parts.front().step});
  return true;
}

void Engine::collect() {
  const int s = params_.s;
  std::vector<std::optional<CertifiedPart>> chosen(static_cast<std::size_t>(s));
  for (const Family& f : families_) {
    if (!f.active) continue;
    for (const CertifiedPart& part : f.parts) {
      if (part.word.size() != 1) continue;
      auto& slot = chosen[static_cast<std::size_t>(part.word[0].index)];
      if (!slot || (slot->word[0].exponent < 0 && part.word[0].exponent > 0)) slot = part;
    }
  }
  int level = 0;
  for (const auto& c : chosen) level = std::max(level, c->level);
  state_.begin_move("carry", "collect isolated generators at level " + std::to_string(level));
  std::vector<int> outputs;
  for (auto& c : chosen) {
    CertifiedPart part = state_.carry(*c, level);
    if (part.word[0].exponent < 0) part = state_.invert(part);
    outputs.push_back(part.step);
  }
  state_.end_move(outputs);
  Transcript& t = state_.transcript();
  t.final_parts = outputs;
  t.final_vertex = state_.base().concat(Vertex::rightmost(params_, level));
}

Transcript Engine::run(const std::vector<Word>& seeds) {
  const int s = params_.s;
  Transcript& t = state_.transcript();
  try {
    if (seeds.size() != static_cast<std::size_t>(s + 1)) {
      throw ParameterMismatch("isolate_generators needs s+1 seeds");
    }
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      check_word(params_, seeds[i]);
      const AbelianizationVector ab = abelianize(params_, seeds[i]);
      for (int k = 0; k < s; ++k) {
        const long long expected = (i > 0 && k == static_cast<int>(i) - 1) ? -1 : 1;
        if (ab.exps[static_cast<std::size_t>(k)] != expected) {
          throw PreconditionError("seed " + std::to_string(i) + " has the wrong abelianization");
        }
      }
    }
    normalize_seeds(seeds);
    state_.set_base(state_.transcript().steps[static_cast<std::size_t>(members_[0])].vertex);
    for (std::size_t i = 0; i < members_.size(); ++i) {
      Family f;
      f.name = i == 0 ? "g" : "h_" + std::to_string(i - 1);
      f.parts.push_back({word_of(members_[i]), members_[i], 0});
      f.active = i <= 1;
      families_.push_back(std::move(f));
    }

    const int round_bound = s * (s + 1);
    int rounds = 0;
    if (!isolated()) {
      open_split();
      ++rounds;
    }
    while (!isolated()) {
      if (rounds >= round_bound) {
        throw ResourceError("round bound " + std::to_string(round_bound) + " reached");
      }
      if (auto cut = find_cut()) {
        const Cut& c = *cut;
        const std::string kind = c.alpha_length == 1 ? "interior-isolation"
                                 : c.situation == Situation::I ? "split-i"
                                                               : "split-ii";
        const Family& af = families_[c.alpha_family];
        const Family& bf = families_[c.beta_family];
        std::string detail = "alpha=" + std::string(c.alpha_inverted ? "(" : "") +
                             to_string(af.parts[c.alpha_part].word) +
                             (c.alpha_inverted ? ")^-1" : "") + " from " + af.name + " beta=" +
                             (c.beta_inverted ? "(" : "") + to_string(bf.parts[c.beta_part].word) +
                             (c.beta_inverted ? ")^-1" : "") + " from " + bf.name + " pivot=a_" +
                             std::to_string(c.pivot);
        apply_cut(c, kind, detail);
        ++rounds;
        continue;
      }
      if (!endpoint_analysis()) {
        t.status = "failed";
        t.failure = "no split applies and every family is active";
        return t;
      }
    }
    collect();
    t.status = "complete";
  } catch (const ParameterMismatch&) {
    throw;
  } catch (const PreconditionError& e) {
    if (members_.empty()) throw;
    t.status = "failed";
    t.failure = e.what();
  } catch (const CertificationError&) {
    throw;
  } catch (const ResourceError& e) {
    t.status = "exhausted";
    t.failure = e.what();
  } catch (const NotFound& e) {
    t.status = "exhausted";
    t.failure = e.what();
  }
  if (state_.in_move()) {
    t.moves.back().last_step = t.steps.size();
    t.moves.back().verified = false;
  }
  return t;
}

}  // namespace

Transcript isolate_generators(const GroupParams& params, const std::vector<Word>& seeds,
                              const Budget& budget) {
  Engine engine(params, budget);
  return engine.run(seeds);
}

// ---------------------------------------------------------------------------
// Replay

ReplayReport replay(const Transcript& transcript) {
  const GroupParams& p = transcript.params;
  ReplayReport report;
  auto fail = [&report](std::string message) {
    report.ok = false;
    report.failures.push_back(std::move(message));
  };
  const auto& steps = transcript.steps;
  std::vector<bool> step_ok(steps.size(), false);

  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Step& st = steps[i];
    const std::string where = "step " + std::to_string(i) + ": ";
    ++report.steps_checked;
    try {
      check_word(p, st.word);
      check_vertex(p, st.vertex);
      auto earlier = [&](int id) { return id >= 0 && static_cast<std::size_t>(id) < i; };
      switch (st.kind) {
        case StepKind::Seed:
          if (st.seed < 0 || static_cast<std::size_t>(st.seed) >= transcript.seeds.size()) {
            fail(where + "unknown seed");
          } else if (!st.vertex.is_root() || st.word != transcript.seeds[static_cast<std::size_t>(st.seed)]) {
            fail(where + "seed does not match");
          } else {
            step_ok[i] = true;
          }
          break;
        case StepKind::Descend: {
          if (!earlier(st.input)) {
            fail(where + "input is not an earlier step");
            break;
          }
          const Step& x = steps[static_cast<std::size_t>(st.input)];
          if (st.power < 0 || st.power > kMaxStepPower || st.digit < 0 || st.digit >= p.m) {
            fail(where + "digit or power out of range");
            break;
          }
          if (st.vertex != x.vertex.child(st.digit)) {
            fail(where + "vertex is not the child of the input vertex");
            break;
          }
          const Word y = st.power == 0 ? x.word : power(x.word, int_pow(p.m, st.power));
          if (root_exponent(p, y) != 0) {
            fail(where + "power does not fix the digit");
            break;
          }
          if (!equal_elements(p, section(p, y, st.digit), st.word)) {
            fail(where + "section differs from the recorded word");
            break;
          }
          step_ok[i] = true;
          break;
        }
        case StepKind::Multiply: {
          if (!earlier(st.left) || (st.right != -1 && !earlier(st.right))) {
            fail(where + "operands are not earlier steps");
            break;
          }
          if (std::abs(st.left_exponent) != 1 || std::abs(st.right_exponent) != 1) {
            fail(where + "exponents must be +-1");
            break;
          }
          const Step& l = steps[static_cast<std::size_t>(st.left)];
          Word product = st.left_exponent > 0 ? l.word : l.word.inverse();
          if (l.vertex != st.vertex) {
            fail(where + "left operand at another vertex");
            break;
          }
          if (st.right >= 0) {
            const Step& r = steps[static_cast<std::size_t>(st.right)];
            if (r.vertex != st.vertex) {
              fail(where + "right operand at another vertex");
              break;
            }
            product.append(st.right_exponent > 0 ? r.word : r.word.inverse());
          }
          if (!equal_elements(p, product, st.word)) {
            fail(where + "product differs from the recorded word");
            break;
          }
          step_ok[i] = true;
          break;
        }
      }
    } catch (const Error& e) {
      fail(where + e.what());
    }
  }

  std::size_t previous_end = 0;
  for (std::size_t mi = 0; mi < transcript.moves.size(); ++mi) {
    const Move& move = transcript.moves[mi];
    const std::string where = "move " + std::to_string(mi) + " (" + move.kind + "): ";
    if (move.first_step < previous_end || move.last_step < move.first_step ||
        move.last_step > steps.size()) {
      fail(where + "step range is malformed");
      continue;
    }
    previous_end = move.last_step;
    bool all_ok = true;
    for (std::size_t i = move.first_step; i < move.last_step; ++i) all_ok = all_ok && step_ok[i];
    for (int id : move.inputs) {
      if (id < 0 || static_cast<std::size_t>(id) >= move.first_step) fail(where + "input not admitted before the move");
    }
    for (int id : move.outputs) {
      if (id < 0 || static_cast<std::size_t>(id) >= move.last_step) fail(where + "output not produced by then");
    }
    if (move.verified && !all_ok) fail(where + "marked verified but a step fails");
  }

  if (transcript.complete()) {
    if (transcript.final_parts.size() != static_cast<std::size_t>(p.s)) {
      fail("final parts: expected " + std::to_string(p.s) + " generators");
    } else {
      for (int i = 0; i < p.s; ++i) {
        const int id = transcript.final_parts[static_cast<std::size_t>(i)];
        if (id < 0 || static_cast<std::size_t>(id) >= steps.size()) {
          fail("final part " + std::to_string(i) + " is not a step");
          continue;
        }
        const Step& st = steps[static_cast<std::size_t>(id)];
        if (st.vertex != transcript.final_vertex) fail("final part " + std::to_string(i) + " at another vertex");
        if (!equal_elements(p, st.word, Word::generator(i))) {
          fail("final part " + std::to_string(i) + " is " + to_string(st.word));
        }
      }
    }
  }
  return report;
}

}  // namespace madic
