#include "madic/family.hpp"

#include <deque>

#include "madic/errors.hpp"

namespace madic {

GeneratorFamily::GeneratorFamily(const GroupParams& p) : params(p) {
  for (int i = 0; i < p.s; ++i) generators.push_back(Word::generator(i));
}

namespace {

bool has_sections(const GroupParams& params, const Word& w, int root,
                  const std::vector<Word>& expected) {
  const WreathDecomposition d = decompose(params, w);
  if (d.root_exponent != root) return false;
  for (int x = 0; x < params.m; ++x) {
    if (d.sections[static_cast<std::size_t>(x)] != expected[static_cast<std::size_t>(x)]) return false;
  }
  return true;
}

}  // namespace

bool verify_generator_recursions(const GroupParams& params) {
  const GeneratorFamily family(params);
  const auto& a = family.generators;
  const auto m = static_cast<std::size_t>(params.m);
  const auto s = static_cast<std::size_t>(params.s);
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<Word> expected(m);
    expected[m - 1] = a[i == 0 ? s - 1 : i - 1];
    if (!has_sections(params, a[i], i == 0 ? 1 : 0, expected)) return false;
  }
  if (params.m == 2 && params.s == 2) {
    const Word& basilica_a = a[1];
    const Word& basilica_b = a[0];
    if (!has_sections(params, basilica_a, 0, {Word(), basilica_b})) return false;
    if (!has_sections(params, basilica_b, 1, {Word(), basilica_a})) return false;
  }
  return true;
}

Word fractality_witness(const GroupParams& params, int i) {
  if (i < 0 || i >= params.s) {
    throw ParameterMismatch("generator index " + std::to_string(i) + " out of range for s=" +
                            std::to_string(params.s));
  }
  // a_{i+1} = (1,...,1,a_i); a_0^m has every section equal to a_{s-1}.
  const Word witness = i + 1 < params.s ? Word::generator(i + 1) : power(Word::generator(0), params.m);
  const Word target = Word::generator(i);
  if (root_exponent(params, witness) != 0 ||
      !equal_elements(params, section(params, witness, params.m - 1), target)) {
    throw CertificationError("fractality witness for a_" + std::to_string(i) + " failed to verify");
  }
  return witness;
}

bool check_spherical_transitivity(const GroupParams& params, int n, std::size_t cap) {
  std::vector<LevelPermutation> moves;
  for (int i = 0; i < params.s; ++i) {
    LevelPermutation p = level_permutation(params, Word::generator(i), n, cap);
    moves.push_back(p.inverse());
    moves.push_back(std::move(p));
  }
  const std::size_t count = moves.front().images.size();
  std::vector<bool> seen(count, false);
  std::deque<std::uint32_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (const LevelPermutation& p : moves) {
      const std::uint32_t w = p.images[v];
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  return reached == count;
}

}  // namespace madic
