#include "madic/projections.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <unordered_set>

#include "madic/errors.hpp"

namespace madic {

namespace {

int mod(long long a, int m) {
  const long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

bool coprime_root(const GroupParams& params, int i) { return i != 0 && std::gcd(i, params.m) == 1; }

std::vector<int> sign_vector(const GroupParams& params, const Word& w) {
  const AbelianizationVector ab = abelianize(params, w);
  if (!ab.is_sign_vector()) {
    throw PreconditionError("abelianization must be a sign vector");
  }
  return {ab.exps.begin(), ab.exps.end()};
}

// Depth whose level permutation has at most 64 vertices.
int prefilter_depth(const GroupParams& params) {
  int depth = 1;
  long long count = params.m;
  while (count * params.m <= 64) {
    count *= params.m;
    ++depth;
  }
  return depth;
}

constexpr std::size_t kCertificateCap = 5'000'000;

}  // namespace

Word PermutedProduct::word() const {
  Word out;
  for (std::size_t k = pi.size(); k-- > 0;) {
    const int index = pi[k];
    out.push_back({index, signs[static_cast<std::size_t>(index)]});
  }
  return out;
}

std::optional<PermutedProduct> PermutedProduct::from_word(const GroupParams& params, const Word& w) {
  const auto s = static_cast<std::size_t>(params.s);
  if (w.size() != s) return std::nullopt;
  PermutedProduct out;
  out.pi.assign(s, -1);
  out.signs.assign(s, 0);
  for (std::size_t pos = 0; pos < s; ++pos) {
    const Letter& l = w[pos];
    if (l.index < 0 || l.index >= params.s) return std::nullopt;
    if (out.signs[static_cast<std::size_t>(l.index)] != 0) return std::nullopt;
    out.signs[static_cast<std::size_t>(l.index)] = l.exponent;
    out.pi[s - 1 - pos] = l.index;
  }
  return out;
}

std::vector<PermutedProduct> permuted_products(const GroupParams& params,
                                               const std::vector<int>& signs) {
  if (signs.size() != static_cast<std::size_t>(params.s)) {
    throw ParameterMismatch("sign vector must have length s");
  }
  std::vector<int> pi(static_cast<std::size_t>(params.s));
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<PermutedProduct> out;
  do {
    out.push_back({pi, signs});
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

Word shift_indices(const GroupParams& params, const Word& w, int r) {
  check_word(params, w);
  Word out;
  for (const Letter& l : w.letters()) out.push_back({mod(l.index - r, params.s), l.exponent});
  return out;
}

std::vector<Word> power_sections(const GroupParams& params, const Word& w) {
  const WreathDecomposition d = decompose(params, w);
  const int i = d.root_exponent;
  if (i == 0) return d.sections;
  if (!coprime_root(params, i)) {
    throw PreconditionError("power-section formula requires gcd(i,m)=1");
  }
  // alpha_k = g_k g_{k + i} g_{k + 2i} ... g_{k + (m-1)i}
  std::vector<Word> alphas;
  for (int k = 0; k < params.m; ++k) {
    Word alpha;
    for (int step = 0; step < params.m; ++step) {
      alpha.append(d.sections[static_cast<std::size_t>(mod(k + static_cast<long long>(step) * i, params.m))]);
    }
    alphas.push_back(std::move(alpha));
  }
  const WreathDecomposition direct = decompose(params, power(w, params.m));
  for (int k = 0; k < params.m; ++k) {
    const auto& a = alphas[static_cast<std::size_t>(k)];
    const auto& b = direct.sections[static_cast<std::size_t>(k)];
    if (a != b && !equal_elements(params, a, b)) {
      throw CertificationError("power-section formula disagrees with the decomposition of g^m");
    }
  }
  return alphas;
}

Word power_section_along(const GroupParams& params, const Word& w, const Vertex& u, int t) {
  check_vertex(params, u);
  check_word(params, w);
  if (t < 0) throw PreconditionError("power exponent must be non-negative");
  Word h = w;
  int remaining = t;
  for (int x : u.path()) {
    if (remaining > 0) {
      h = section_of_mth_power(params, h, x);
      --remaining;
    } else {
      if (root_exponent(params, h) != 0) {
        throw PreconditionError("power does not fix vertex " + to_string(u));
      }
      h = section(params, h, x);
    }
  }
  for (; remaining > 0; --remaining) h = power(h, params.m);
  return h;
}

Word rightmost_projection(const GroupParams& params, const Word& w, int j) {
  if (j < 0) throw PreconditionError("projection depth must be non-negative");
  check_word(params, w);
  Word h = w;
  for (int step = 0; step < j; ++step) {
    const int i = root_exponent(params, h);
    if (i != 0 && !coprime_root(params, i)) {
      throw PreconditionError("power-section formula requires gcd(i,m)=1");
    }
    h = section_of_mth_power(params, h, params.m - 1);
  }
  return h;
}

bool shifted_congruence_check(const GroupParams& params, const Word& w, int j) {
  const std::vector<int> eps = sign_vector(params, w);
  if (j < 1) throw PreconditionError("shifted congruence needs j >= 1");
  std::vector<Word> level{w};
  for (int step = 0; step < j; ++step) {
    std::vector<Word> next;
    next.reserve(level.size() * static_cast<std::size_t>(params.m));
    for (const Word& h : level) {
      for (Word& alpha : power_sections(params, h)) next.push_back(std::move(alpha));
    }
    level = std::move(next);
  }
  const int r = j % params.s;
  for (const Word& h : level) {
    const AbelianizationVector ab = abelianize(params, h);
    for (int i = 0; i < params.s; ++i) {
      if (ab.exps[static_cast<std::size_t>(i)] != eps[static_cast<std::size_t>((i + r) % params.s)]) {
        return false;
      }
    }
  }
  return true;
}

std::optional<PermutedProduct> recognize_permuted_product(const GroupParams& params,
                                                          const Word& h, std::size_t* tests) {
  const AbelianizationVector ab = abelianize(params, h);
  if (!ab.is_sign_vector()) return std::nullopt;
  if (auto direct = PermutedProduct::from_word(params, h)) return direct;
  const std::vector<int> signs(ab.exps.begin(), ab.exps.end());
  const int depth = prefilter_depth(params);
  const LevelPermutation target = level_permutation(params, h, depth);
  for (const PermutedProduct& candidate : permuted_products(params, signs)) {
    const Word cw = candidate.word();
    if (level_permutation(params, cw, depth) != target) continue;
    if (tests) ++*tests;
    if (equal_elements(params, h, cw)) return candidate;
  }
  return std::nullopt;
}

AlignmentResult cyclic_alignment(const GroupParams& params, const PermutedProduct& prod,
                                 int target) {
  if (target < 0 || target >= params.s) throw ParameterMismatch("target index out of range");
  if (prod.signs.at(static_cast<std::size_t>(target)) != 1) {
    throw PreconditionError("alignment target must carry exponent +1");
  }
  const Word g = prod.word();
  // The rotation of g that ends with a_target.
  std::size_t pos = 0;
  while (g[pos].index != target) ++pos;
  Word rotated = g.subword(pos + 1, g.size());
  rotated.append(g.subword(0, pos + 1));

  auto matches = [&](const Vertex& u, int t) {
    return equal_elements(params, power_section_along(params, g, u, t), rotated);
  };

  const int s = params.s;
  const int m = params.m;
  std::vector<int> candidate(static_cast<std::size_t>(target), m - 1);
  candidate.push_back(m - 2);
  candidate.insert(candidate.end(), static_cast<std::size_t>(s - target - 1), m - 1);
  const Vertex proof_vertex(std::move(candidate));
  for (int t = s; t <= 2 * s; ++t) {
    if (matches(proof_vertex, t)) return {proof_vertex, rotated, t};
  }

  constexpr std::size_t kVertexCap = 100'000;
  for (int t = 1; t <= 2 * s; ++t) {
    for (int level = s; level <= t; level += s) {
      std::size_t count = 1;
      for (int d = 0; d < level; ++d) count *= static_cast<std::size_t>(m);
      if (count > kVertexCap) throw ResourceError("alignment search exceeds the vertex cap");
      for (std::size_t code = 0; code < count; ++code) {
        const Vertex u = decode_vertex(params, level, static_cast<std::uint32_t>(code));
        if (matches(u, t)) return {u, rotated, t};
      }
    }
  }
  throw NotFound("no aligned rotation found within power depth " + std::to_string(2 * s));
}

namespace {

struct SearchState {
  Word word;
  Vertex vertex;
};

struct SearchOrder {
  bool operator()(const SearchState& a, const SearchState& b) const {
    if (a.word.size() != b.word.size()) return a.word.size() > b.word.size();
    if (a.vertex.level() != b.vertex.level()) return a.vertex.level() > b.vertex.level();
    return a.vertex > b.vertex;
  }
};

}  // namespace

NormalizationWitness normalize_to_permuted_product(const GroupParams& params, const Word& w,
                                                   const Budget& budget) {
  check_word(params, w);
  const std::vector<int> eps = sign_vector(params, w);
  const int s = params.s;
  const int max_level = budget.max_level > 0 ? budget.max_level : 3 * s * s;
  std::size_t tests = 0;

  // Best-first over sections of m-th powers: shortest word first, then
  // shallowest, then leftmost. Section words never grow, so short words are
  // the ones the length-reduction argument drives towards.
  std::priority_queue<SearchState, std::vector<SearchState>, SearchOrder> queue;
  std::unordered_set<Word, WordHash> visited;
  queue.push({w, Vertex()});
  visited.insert(w);
  while (!queue.empty()) {
    SearchState state = queue.top();
    queue.pop();
    if (tests >= budget.max_equality_tests) {
      throw NotFound("normalization budget of " + std::to_string(budget.max_equality_tests) +
                     " equality tests exhausted");
    }
    if (recognize_permuted_product(params, state.word, &tests)) {
      // Continue down the rightmost path to the next level divisible by s.
      const int level = state.vertex.level();
      const int extra = (s - level % s) % s;
      const Vertex tail = Vertex::rightmost(params, extra);
      const Word projected = power_section_along(params, state.word, tail, extra);
      if (auto result = recognize_permuted_product(params, projected, &tests)) {
        NormalizationWitness witness;
        witness.vertex = state.vertex.concat(tail);
        witness.exponent_j = witness.vertex.level();
        witness.result = *result;
        std::size_t factor = 1;
        for (int i = 0; i < witness.exponent_j; ++i) {
          factor *= static_cast<std::size_t>(params.m);
          if (factor * w.size() > kCertificateCap) {
            throw ResourceError("normalization certificate exceeds " + std::to_string(kCertificateCap) +
                                " letters");
          }
        }
        witness.certificate = power(w, static_cast<long long>(factor));
        if (!verify_witness(params, w, witness)) {
          throw CertificationError("normalization witness failed to verify");
        }
        return witness;
      }
    }
    if (state.vertex.level() >= max_level) continue;
    for (int x = 0; x < params.m; ++x) {
      Word child = section_of_mth_power(params, state.word, x);
      if (visited.insert(child).second) queue.push({std::move(child), state.vertex.child(x)});
    }
  }
  throw NotFound("no permuted product reachable within level " + std::to_string(max_level));
}

bool verify_witness(const GroupParams& params, const Word& input,
                    const NormalizationWitness& witness) {
  if (witness.vertex.level() % params.s != 0) return false;
  if (witness.exponent_j < 0) return false;
  const AbelianizationVector ab = abelianize(params, input);
  for (int i = 0; i < params.s; ++i) {
    if (ab.exps[static_cast<std::size_t>(i)] != witness.result.signs.at(static_cast<std::size_t>(i))) {
      return false;
    }
  }
  long long factor = 1;
  for (int i = 0; i < witness.exponent_j; ++i) factor *= params.m;
  if (witness.certificate != power(input, factor)) return false;
  if (act(params, witness.certificate, witness.vertex) != witness.vertex) return false;
  return equal_elements(params, section(params, witness.certificate, witness.vertex),
                        witness.result.word());
}

}  // namespace madic
