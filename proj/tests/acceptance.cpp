// Acceptance run: one line per criterion with its time limit. Expected
// values come from the independent model in oracle.hpp wherever one exists.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "madic/calculus.hpp"
#include "madic/family.hpp"
#include "madic/geodesics.hpp"
#include "madic/prodense.hpp"
#include "madic/projections.hpp"
#include "madic/word.hpp"
#include "support.hpp"

using namespace madic;
using testing_support::to_letters;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void fail(const std::string& what) {
    pass = false;
    if (problems.size() < 5) problems.push_back(what);
  }
};

const std::vector<std::pair<int, int>> kSmall{{2, 2}, {3, 2}, {2, 3}};
const std::vector<std::pair<int, int>> kEngine{{2, 2}, {2, 3}, {3, 2}, {3, 3}};

Word a(int i, int e = 1) { return Word::generator(i, e); }

std::string pair_name(int m, int s) { return "(" + std::to_string(m) + "," + std::to_string(s) + ")"; }

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Image of v under w^times, following the orbit of v until it closes so
// that large powers stay cheap; gives up after `work` letter applications.
std::optional<oracle::Path> act_power(int m, int s, const oracle::Letters& w, const oracle::Path& v,
                                      long long times, long long work) {
  std::vector<oracle::Path> orbit{v};
  oracle::Path x = v;
  for (long long k = 1; k <= times; ++k) {
    work -= static_cast<long long>(w.size());
    if (work < 0) return std::nullopt;
    x = oracle::act(m, s, w, x);
    if (x == v) return orbit[static_cast<std::size_t>(times % k)];
    orbit.push_back(x);
  }
  return x;
}

// Model-side section of w^times below u at the given depth, or nothing when
// the work cap is hit. Also reports whether u is fixed.
std::optional<std::vector<std::uint32_t>> power_section_images(int m, int s, const Word& w, long long times,
                                                               const oracle::Path& u, int depth,
                                                               bool& fixes_u, long long work = 20'000'000) {
  const oracle::Letters letters = to_letters(w);
  const auto fixed = act_power(m, s, letters, u, times, work);
  if (!fixed) return std::nullopt;
  fixes_u = *fixed == u;
  const std::uint32_t count = static_cast<std::uint32_t>(ipow(m, depth));
  std::vector<std::uint32_t> out(count);
  for (std::uint32_t c = 0; c < count; ++c) {
    oracle::Path v = u;
    const oracle::Path tail = oracle::decode(m, depth, c);
    v.insert(v.end(), tail.begin(), tail.end());
    const auto image = act_power(m, s, letters, v, times, work);
    if (!image) return std::nullopt;
    out[c] = oracle::encode(m, oracle::Path(image->begin() + static_cast<std::ptrdiff_t>(u.size()), image->end()));
  }
  return out;
}

oracle::Path to_path(const Vertex& v) { return oracle::Path(v.path().begin(), v.path().end()); }

Word strong_commutator(std::mt19937& rng, const GroupParams& p) {
  for (;;) {
    const Word u = testing_support::draw_word(rng, p.s, 2);
    const Word v = testing_support::draw_word(rng, p.s, 2);
    const Word z = commutator(u, v);
    if (z.size() >= 6 && !is_identity(p, z)) return z;
  }
}

// ---------------------------------------------------------------------------

Outcome recursions() {
  Outcome o;
  for (int m = 2; m <= 5; ++m) {
    for (int s = 2; s <= 5; ++s) {
      const GroupParams p(m, s);
      if (!verify_generator_recursions(p)) o.fail("recursions " + pair_name(m, s));
      // Model: a_i acts through its first-level sections exactly as the
      // recursion says, checked on three levels.
      for (int i = 0; i < s; ++i) {
        const WreathDecomposition d = decompose(p, a(i));
        if (d.root_exponent != (i == 0 ? 1 : 0)) o.fail("root exponent of a_" + std::to_string(i));
        for (int x = 0; x < m; ++x) {
          const oracle::Letters sec = to_letters(d.sections[static_cast<std::size_t>(x)]);
          if (oracle::section_images(m, s, to_letters(a(i)), {x}, 3) != oracle::level_images(m, s, sec, 3)) {
            o.fail("section of a_" + std::to_string(i) + " at " + std::to_string(x) + " for " + pair_name(m, s));
          }
        }
      }
    }
  }
  // a = (1, b), b = (1, a) sigma with a = a_1, b = a_0.
  const GroupParams b(2, 2);
  const WreathDecomposition da = decompose(b, a(1));
  const WreathDecomposition db = decompose(b, a(0));
  if (!(da.root_exponent == 0 && da.sections[0].empty() && da.sections[1] == a(0))) o.fail("a = (1, b)");
  if (!(db.root_exponent == 1 && db.sections[0].empty() && db.sections[1] == a(1))) o.fail("b = (1, a) sigma");
  o.detail = "16 parameter pairs, classical (2,2) correspondence";
  return o;
}

Outcome commutator_sections() {
  Outcome o;
  std::mt19937 rng(2024);
  std::size_t checked = 0;
  for (auto [m, s] : kSmall) {
    const GroupParams p(m, s);
    for (int trial = 0; trial < 500; ++trial) {
      const Word z = testing_support::draw_commutators(rng, s, 1 + trial % 4, 3);
      const WreathDecomposition d = decompose(p, z);
      Word product;
      for (const Word& sec : d.sections) product.append(sec);
      if (d.root_exponent != 0) o.fail("commutator moves the first level");
      if (!abelianize(p, product).is_zero()) o.fail(pair_name(m, s) + " " + to_string(z));
      // Model: the sections are the ones z really induces, and their exponent
      // sums (taken from the model-checked words) cancel.
      std::vector<long long> total(static_cast<std::size_t>(s), 0);
      for (int x = 0; x < m; ++x) {
        const Word& sec = d.sections[static_cast<std::size_t>(x)];
        if (oracle::section_images(m, s, to_letters(z), {x}, 3) != oracle::level_images(m, s, to_letters(sec), 3)) {
          o.fail("section disagrees with the model");
        }
        const auto sums = oracle::exponent_sums(s, to_letters(sec));
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += sums[i];
      }
      for (long long t : total) {
        if (t != 0) o.fail("model exponent sums nonzero");
      }
      ++checked;
    }
  }
  o.detail = std::to_string(checked) + " commutator products";
  return o;
}

Outcome length_lemmas() {
  Outcome o;
  std::ostringstream detail;
  for (auto [m, s, r] : {std::tuple{2, 2, 6}, {3, 2, 5}, {2, 3, 5}}) {
    const GroupParams p(m, s);
    const CayleyBall ball = enumerate_ball(p, r);
    detail << pair_name(m, s) << " r=" << r << " |B|=" << ball.size() << "; ";
    for (const LemmaReport& report : verify_length_lemmas(ball)) {
      if (!report.ok()) {
        o.fail(pair_name(m, s) + " " + report.lemma + ": " + std::to_string(report.violations.size()) +
               " violations, " + std::to_string(report.unverified) + " unverified" +
               (report.violations.empty() ? "" : " e.g. " + report.violations.front()));
      }
      if (report.instances_checked == 0) o.fail(pair_name(m, s) + " " + report.lemma + " checked nothing");
    }
  }
  o.detail = detail.str();
  return o;
}

Outcome projections() {
  Outcome o;
  std::size_t checked = 0;
  for (auto [m, s] : kSmall) {
    const GroupParams p(m, s);
    for (int mask = 0; mask < (1 << s); ++mask) {
      std::vector<int> signs;
      for (int i = 0; i < s; ++i) signs.push_back(mask >> i & 1 ? -1 : 1);
      for (const PermutedProduct& pp : permuted_products(p, signs)) {
        const Word g = pp.word();
        for (int j = 0; j <= 2 * s + 1; ++j) {
          const Word projected = rightmost_projection(p, g, j);
          if (!equal_elements(p, projected, shift_indices(p, g, j % s))) {
            o.fail(pair_name(m, s) + " " + to_string(g) + " j=" + std::to_string(j));
          }
          if (j == s && projected != g) o.fail("j = s is not exact for " + to_string(g));
          bool fixes = false;
          const auto model = power_section_images(m, s, g, ipow(m, j), oracle::Path(static_cast<std::size_t>(j), m - 1),
                                                  3, fixes);
          if (!model || !fixes || *model != oracle::level_images(m, s, to_letters(projected), 3)) {
            o.fail("model disagrees for " + to_string(g) + " j=" + std::to_string(j));
          }
          ++checked;
        }
      }
    }
  }
  o.detail = std::to_string(checked) + " (product, j) pairs";
  return o;
}

Outcome congruences() {
  Outcome o;
  std::mt19937 rng(4242);
  std::size_t checked = 0;
  for (auto [m, s] : kSmall) {
    const GroupParams p(m, s);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<int> signs;
      for (int i = 0; i < s; ++i) signs.push_back(rng() % 2 ? 1 : -1);
      const auto all = permuted_products(p, signs);
      Word w = all[rng() % all.size()].word();
      w.append(testing_support::draw_commutators(rng, s, 1 + trial % 3, 3));
      for (int j = 1; j <= s + 1; ++j) {
        if (!shifted_congruence_check(p, w, j)) o.fail(pair_name(m, s) + " " + to_string(w) + " j=" + std::to_string(j));
        ++checked;
      }
    }
  }
  o.detail = std::to_string(checked) + " (word, j) checks";
  return o;
}

Outcome alignment() {
  Outcome o;
  std::size_t checked = 0;
  for (auto [m, s] : kSmall) {
    const GroupParams p(m, s);
    for (const PermutedProduct& pp : permuted_products(p, std::vector<int>(static_cast<std::size_t>(s), 1))) {
      for (int target = 0; target < s; ++target) {
        const AlignmentResult r = cyclic_alignment(p, pp, target);
        const std::string name = pair_name(m, s) + " " + to_string(pp.word()) + " -> a_" + std::to_string(target);
        if (r.vertex.level() % s != 0) o.fail(name + ": level not a multiple of s");
        if (r.word.empty() || r.word.back() != Letter{target, 1}) o.fail(name + ": wrong last letter");
        const auto rotated = PermutedProduct::from_word(p, r.word);
        bool cyclic = false;
        const Word original = pp.word();
        const auto& letters = original.letters();
        for (std::size_t k = 0; rotated && k < letters.size(); ++k) {
          Word rot;
          for (std::size_t i = 0; i < letters.size(); ++i) rot.push_back(letters[(k + i) % letters.size()]);
          cyclic = cyclic || rot == r.word;
        }
        if (!cyclic) o.fail(name + ": not a cyclic rotation");
        if (!equal_elements(p, section(p, power(pp.word(), ipow(m, r.power_exponent)), r.vertex), r.word)) {
          o.fail(name + ": certificate fails");
        }
        bool fixes = false;
        const auto model =
            power_section_images(m, s, pp.word(), ipow(m, r.power_exponent), to_path(r.vertex), 3, fixes);
        if (!model || !fixes || *model != oracle::level_images(m, s, to_letters(r.word), 3)) {
          o.fail(name + ": model disagrees");
        }
        ++checked;
      }
    }
  }
  const GroupParams b(2, 2);
  const auto g = PermutedProduct::from_word(b, Word{{1, 1}, {0, 1}});
  const AlignmentResult to0 = cyclic_alignment(b, *g, 0);
  const AlignmentResult to1 = cyclic_alignment(b, *g, 1);
  if (to_string(to0.vertex) != "01" || to0.word.back() != Letter{0, 1}) o.fail("a_1a_0 towards a_0");
  if (to_string(to1.vertex) != "10" || to1.word.back() != Letter{1, 1}) o.fail("a_1a_0 towards a_1");
  o.detail = std::to_string(checked) + " alignments; (2,2) a_1a_0: '" + to_string(to0.vertex) + "' -> " +
             to_string(to0.word) + ", '" + to_string(to1.vertex) + "' -> " + to_string(to1.word);
  return o;
}

Outcome normalization(double per_input_limit) {
  Outcome o;
  std::mt19937 rng(777);
  std::size_t checked = 0;
  std::size_t modelled = 0;
  double slowest = 0;
  for (auto [m, s] : kSmall) {
    const GroupParams p(m, s);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> signs;
      for (int i = 0; i < s; ++i) signs.push_back(rng() % 2 ? 1 : -1);
      const auto all = permuted_products(p, signs);
      Word w = all[rng() % all.size()].word();
      w.append(testing_support::draw_commutators(rng, s, 1 + trial % 3, 3));
      const auto start = Clock::now();
      try {
        const NormalizationWitness witness = normalize_to_permuted_product(p, w);
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        slowest = std::max(slowest, seconds);
        if (seconds > per_input_limit) o.fail(pair_name(m, s) + " " + to_string(w) + " took too long");
        if (!verify_witness(p, w, witness)) o.fail(pair_name(m, s) + " " + to_string(w) + ": witness rejected");
        if (witness.vertex.level() % s != 0) o.fail("vertex level not a multiple of s");
        bool fixes = false;
        const auto model = power_section_images(m, s, w, ipow(m, witness.exponent_j), to_path(witness.vertex), 3,
                                                fixes, 5'000'000);
        if (model) {
          ++modelled;
          if (!fixes || *model != oracle::level_images(m, s, to_letters(witness.result.word()), 3)) {
            o.fail(pair_name(m, s) + " " + to_string(w) + ": model disagrees");
          }
        }
      } catch (const std::exception& e) {
        o.fail(pair_name(m, s) + " " + to_string(w) + ": " + e.what());
      }
      ++checked;
    }
  }
  char buffer[128];
  std::snprintf(buffer, sizeof buffer, "%zu inputs, %zu also checked in the model, slowest %.2fs", checked, modelled,
                slowest);
  o.detail = buffer;
  return o;
}

// Re-checks every ledger step in the model, to finite depth.
void model_replay(const Transcript& t, Outcome& o, const std::string& name) {
  const int m = t.params.m;
  const int s = t.params.s;
  const int depth = m == 2 ? 5 : 3;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const Step& st = t.steps[k];
    const auto target = oracle::level_images(m, s, to_letters(st.word), depth);
    if (st.kind == StepKind::Seed) {
      if (st.word != t.seeds.at(static_cast<std::size_t>(st.seed))) o.fail(name + ": seed step differs");
    } else if (st.kind == StepKind::Descend) {
      const Word& input = t.steps.at(static_cast<std::size_t>(st.input)).word;
      bool fixes = false;
      const auto model = power_section_images(m, s, input, ipow(m, st.power), {st.digit}, depth, fixes);
      if (!model) continue;
      if (!fixes || *model != target) o.fail(name + ": descend step " + std::to_string(k) + " disagrees");
    } else {
      Word product = power(t.steps.at(static_cast<std::size_t>(st.left)).word, st.left_exponent);
      if (st.right >= 0) product.append(power(t.steps.at(static_cast<std::size_t>(st.right)).word, st.right_exponent));
      if (oracle::level_images(m, s, to_letters(product), depth) != target) {
        o.fail(name + ": multiply step " + std::to_string(k) + " disagrees");
      }
    }
  }
}

Outcome engine(double per_run_limit) {
  Outcome o;
  std::mt19937 rng(99);
  std::ostringstream detail;
  double slowest = 0;
  for (auto [m, s] : kEngine) {
    const GroupParams p(m, s);
    for (bool noisy : {false, true}) {
      std::vector<Word> noise(static_cast<std::size_t>(s + 1));
      if (noisy) {
        for (Word& z : noise) z = strong_commutator(rng, p);
      }
      const std::string name = pair_name(m, s) + (noisy ? " noisy" : " plain");
      const auto start = Clock::now();
      const Transcript t = isolate_generators(p, make_prodense_seeds(p, noise));
      const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
      slowest = std::max(slowest, seconds);
      if (seconds > per_run_limit) o.fail(name + " took too long");
      if (!t.complete()) {
        o.fail(name + ": status " + t.status + " " + t.failure);
        continue;
      }
      const std::vector<Word> finals = t.final_words();
      for (int i = 0; i < s; ++i) {
        if (finals.at(static_cast<std::size_t>(i)) != a(i)) o.fail(name + ": final part " + std::to_string(i));
      }
      for (const Move& mv : t.moves) {
        if (!mv.verified) o.fail(name + ": unverified move " + mv.kind);
      }
      const ReplayReport report = replay(t);
      if (!report.ok) o.fail(name + ": replay " + (report.failures.empty() ? "" : report.failures.front()));
      model_replay(t, o, name);
      detail << name << " " << t.steps.size() << " steps; ";
    }
  }
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "slowest %.2fs", slowest);
  o.detail = detail.str() + buffer;
  return o;
}

Outcome word_problem() {
  Outcome o;
  const GroupParams p(2, 2);
  const int level = 8;
  const CayleyBall ball = enumerate_ball(p, 5);
  std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    classes[oracle::level_images(2, 2, to_letters(ball.elements()[i].geodesic), level)].push_back(i);
  }
  // Distinct ball elements must differ at level 8 and under is_identity.
  for (const auto& [images, members] : classes) {
    if (members.size() > 1) o.fail("elements agree on level 8: " + to_string(ball.elements()[members[0]].geodesic));
  }
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::size_t j = i + 1; j < ball.size(); ++j) {
      ++pairs;
      if (is_identity(p, compose(ball.elements()[i].geodesic, invert(ball.elements()[j].geodesic)))) {
        o.fail("false merge of " + to_string(ball.elements()[i].geodesic) + " and " +
               to_string(ball.elements()[j].geodesic));
      }
    }
  }
  // Every word of length <= 5 lands on the ball element with the same
  // level-8 action, and the word problem agrees with the model there.
  const auto words = testing_support::all_words(2, 5);
  for (const Word& w : words) {
    const auto images = oracle::level_images(2, 2, to_letters(w), level);
    const auto where = ball.locate(w);
    if (!where) {
      o.fail("word missing from the ball: " + to_string(w));
      continue;
    }
    const auto it = classes.find(images);
    if (it == classes.end() || it->second.front() != *where) o.fail("false split of " + to_string(w));
    if (!is_identity(p, compose(w, invert(ball.elements()[*where].geodesic)))) {
      o.fail("is_identity misses " + to_string(w));
    }
  }
  o.detail = std::to_string(ball.size()) + " elements, " + std::to_string(pairs) + " pairs, " +
             std::to_string(words.size()) + " words, " + std::to_string(classes.size()) + " level-8 classes";
  return o;
}

Outcome transitivity() {
  Outcome o;
  std::size_t witnesses = 0;
  for (auto [m, s] : kEngine) {
    const GroupParams p(m, s);
    for (int n = 1; n <= 4; ++n) {
      if (!check_spherical_transitivity(p, n)) o.fail(pair_name(m, s) + " level " + std::to_string(n));
      // Model: the orbit of 0...0 under the generators.
      std::set<oracle::Path> seen{oracle::Path(static_cast<std::size_t>(n), 0)};
      std::vector<oracle::Path> frontier(seen.begin(), seen.end());
      while (!frontier.empty()) {
        const oracle::Path v = frontier.back();
        frontier.pop_back();
        for (int i = 0; i < s; ++i) {
          const oracle::Path w = oracle::act(m, s, {{i, 1}}, v);
          if (seen.insert(w).second) frontier.push_back(w);
        }
      }
      if (static_cast<long long>(seen.size()) != ipow(m, n)) o.fail(pair_name(m, s) + " model orbit is not the level");
    }
    for (int i = 0; i < s; ++i) {
      const Word w = fractality_witness(p, i);
      const bool stabilises = root_exponent(p, w) == 0;
      const bool library = stabilises && equal_elements(p, section(p, w, m - 1), a(i));
      bool model = true;
      for (int x = 0; x < m; ++x) {
        if (oracle::act(m, s, to_letters(w), {x}) != oracle::Path{x}) model = false;
      }
      model = model && oracle::section_images(m, s, to_letters(w), {m - 1}, 5) ==
                           oracle::level_images(m, s, to_letters(a(i)), 5);
      if (!library || !model) o.fail(pair_name(m, s) + " fractality witness for a_" + std::to_string(i));
      ++witnesses;
    }
  }
  o.detail = "levels 1..4 on 4 pairs, " + std::to_string(witnesses) + " fractality witnesses";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* title;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "generator recursions", 1, recursions},
      {2, "commutator sections lie in G'", 10, commutator_sections},
      {3, "length lemmas on full balls", 300, length_lemmas},
      {4, "rightmost projections, exhaustive", 60, projections},
      {5, "shifted congruences", 120, congruences},
      {6, "cyclic alignment", 60, alignment},
      {7, "normalization witnesses", 20 * 3 * 30.0, [] { return normalization(30); }},
      {8, "generator isolation engine", 8 * 60.0, [] { return engine(60); }},
      {9, "word problem consistency", 120, word_problem},
      {10, "transitivity and fractality", 30, transitivity},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (seconds > c.limit) o.fail("time limit exceeded");
    std::printf("criterion %2d %-34s %s  %.2fs / %.0fs  %s\n", c.number, c.title, o.pass ? "PASS" : "FAIL", seconds,
                c.limit, o.detail.c_str());
    for (const std::string& p : o.problems) std::printf("    %s\n", p.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
