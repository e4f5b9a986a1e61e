#include "madic/suites.hpp"

#include <algorithm>
#include <numeric>

#include "madic/errors.hpp"
#include "madic/family.hpp"
#include "madic/projections.hpp"

namespace madic {

Word random_word(std::mt19937_64& rng, const GroupParams& params, int min_length, int max_length) {
  const std::vector<Letter> letters = alphabet(params);
  std::uniform_int_distribution<int> length_dist(min_length, max_length);
  std::uniform_int_distribution<std::size_t> letter_dist(0, letters.size() - 1);
  const int length = length_dist(rng);
  Word w;
  while (static_cast<int>(w.size()) < length) {
    const Letter l = letters[letter_dist(rng)];
    if (!w.empty() && w.back().cancels(l)) continue;
    w.push_back(l);
  }
  return w;
}

Word random_noise(std::mt19937_64& rng, const GroupParams& params, int max_commutators,
                  int max_length) {
  std::uniform_int_distribution<int> count_dist(1, max_commutators);
  const int count = count_dist(rng);
  Word z;
  for (int i = 0; i < count; ++i) {
    const Word u = random_word(rng, params, 1, max_length);
    const Word v = random_word(rng, params, 1, max_length);
    z.append(commutator(u, v));
  }
  return z;
}

Word random_noisy_permuted_product(std::mt19937_64& rng, const GroupParams& params,
                                   int max_commutators) {
  PermutedProduct pp;
  pp.pi.resize(static_cast<std::size_t>(params.s));
  std::iota(pp.pi.begin(), pp.pi.end(), 0);
  std::shuffle(pp.pi.begin(), pp.pi.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < params.s; ++i) pp.signs.push_back(coin(rng) ? 1 : -1);
  Word w = pp.word();
  w.append(random_noise(rng, params, max_commutators));
  return w;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lengths",   "congruence",   "projection",
                                              "alignment", "transitivity", "recursions"};
  return names;
}

namespace {

std::vector<std::vector<int>> all_sign_vectors(int s) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << s); ++mask) {
    std::vector<int> signs;
    for (int i = 0; i < s; ++i) signs.push_back((mask >> i) & 1 ? -1 : 1);
    out.push_back(std::move(signs));
  }
  return out;
}

LemmaReport congruence_suite(const GroupParams& params, const SuiteOptions& options) {
  LemmaReport report{"shifted-congruence", 0, {}, 0};
  std::mt19937_64 rng(options.seed);
  for (std::size_t i = 0; i < options.samples; ++i) {
    const Word w = random_noisy_permuted_product(rng, params);
    for (int j = 1; j <= params.s + 1; ++j) {
      ++report.instances_checked;
      if (!shifted_congruence_check(params, w, j)) {
        report.violations.push_back(to_string(w) + " at j=" + std::to_string(j));
      }
    }
  }
  return report;
}

LemmaReport projection_suite(const GroupParams& params) {
  LemmaReport report{"rightmost-projection-shift", 0, {}, 0};
  for (const auto& signs : all_sign_vectors(params.s)) {
    for (const PermutedProduct& pp : permuted_products(params, signs)) {
      const Word w = pp.word();
      for (int j = 0; j <= 2 * params.s + 1; ++j) {
        ++report.instances_checked;
        const Word projected = rightmost_projection(params, w, j);
        const Word expected = shift_indices(params, w, j % params.s);
        const bool ok = j == params.s ? projected == w : equal_elements(params, projected, expected);
        if (!ok) {
          report.violations.push_back(to_string(w) + " at j=" + std::to_string(j) + " gave " +
                                      to_string(projected));
        }
      }
    }
  }
  return report;
}

LemmaReport alignment_suite(const GroupParams& params) {
  LemmaReport report{"cyclic-alignment", 0, {}, 0};
  const std::vector<int> positive(static_cast<std::size_t>(params.s), 1);
  for (const PermutedProduct& pp : permuted_products(params, positive)) {
    for (int target = 0; target < params.s; ++target) {
      ++report.instances_checked;
      try {
        const AlignmentResult r = cyclic_alignment(params, pp, target);
        const Word section_word = power_section_along(params, pp.word(), r.vertex, r.power_exponent);
        const bool ok = r.vertex.level() % params.s == 0 && r.word.back() == Letter{target, 1} &&
                        equal_elements(params, section_word, r.word);
        if (!ok) report.violations.push_back(to_string(pp.word()) + " target " + std::to_string(target));
      } catch (const NotFound&) {
        ++report.unverified;
      }
    }
  }
  return report;
}

LemmaReport transitivity_suite(const GroupParams& params, int max_level) {
  LemmaReport report{"spherical-transitivity", 0, {}, 0};
  for (int n = 1; n <= max_level; ++n) {
    ++report.instances_checked;
    if (!check_spherical_transitivity(params, n)) {
      report.violations.push_back("level " + std::to_string(n) + " is not a single orbit");
    }
  }
  return report;
}

LemmaReport fractality_suite(const GroupParams& params) {
  LemmaReport report{"fractality-witnesses", 0, {}, 0};
  for (int i = 0; i < params.s; ++i) {
    ++report.instances_checked;
    try {
      fractality_witness(params, i);
    } catch (const CertificationError& e) {
      report.violations.push_back(e.what());
    }
  }
  return report;
}

}  // namespace

std::vector<LemmaReport> run_suite(const GroupParams& params, const std::string& name,
                                   const SuiteOptions& options) {
  if (name == "lengths") {
    LengthLemmaOptions lemma_options;
    lemma_options.ball = options.ball;
    return verify_length_lemmas(params, options.radius, lemma_options);
  }
  if (name == "congruence") return {congruence_suite(params, options)};
  if (name == "projection") return {projection_suite(params)};
  if (name == "alignment") return {alignment_suite(params)};
  if (name == "transitivity") return {transitivity_suite(params, options.radius), fractality_suite(params)};
  if (name == "recursions") {
    LemmaReport report{"generator-recursions", 1, {}, 0};
    if (!verify_generator_recursions(params)) report.violations.push_back("recursion mismatch");
    return {report};
  }
  throw ParameterMismatch("unknown suite '" + name + "'");
}

}  // namespace madic
