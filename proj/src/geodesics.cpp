#include "madic/geodesics.hpp"

#include <algorithm>
#include <numeric>

#include "madic/errors.hpp"

namespace madic {

namespace {

std::size_t letter_slot(Letter l) {
  return 2 * static_cast<std::size_t>(l.index) + (l.exponent < 0 ? 1 : 0);
}

bool has_a0_before_inverse(const Word& w) {
  bool seen_a0 = false;
  for (const Letter& l : w.letters()) {
    if (l.index != 0) continue;
    if (l.exponent > 0) seen_a0 = true;
    else if (seen_a0) return true;
  }
  return false;
}

}  // namespace

std::size_t CayleyBall::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (long long e : k.abel) mix(static_cast<std::size_t>(e));
  for (std::uint32_t p : k.perm) mix(p);
  return h;
}

CayleyBall::CayleyBall(const GroupParams& params, const BallOptions& options)
    : params_(params), options_(options) {
  if (options_.prefilter_depth < 1) throw PreconditionError("prefilter depth must be >= 1");
  for (const Letter& l : alphabet(params_)) {
    letter_perms_.push_back(level_permutation(params_, Word{l}, options_.prefilter_depth));
  }
}

CayleyBall::Key CayleyBall::key_of(const Word& w) const {
  Key key{abelianize(params_, w).exps, {}};
  LevelPermutation p = LevelPermutation::identity(params_, options_.prefilter_depth);
  for (const Letter& l : w.letters()) p = p.then(letter_perms_[letter_slot(l)]);
  key.perm = std::move(p.images);
  return key;
}

std::optional<std::size_t> CayleyBall::find(const Key& key, const Word& w) const {
  auto it = buckets_.find(key);
  if (it == buckets_.end()) return std::nullopt;
  for (std::size_t idx : it->second) {
    if (equal_elements(params_, w, elements_[idx].geodesic)) return idx;
  }
  return std::nullopt;
}

std::optional<std::size_t> CayleyBall::locate(const Word& w) const {
  check_word(params_, w);
  return find(key_of(w), w);
}

std::optional<int> CayleyBall::length_of(const Word& w) const {
  if (auto idx = locate(w)) return elements_[*idx].length;
  return std::nullopt;
}

std::vector<Word> CayleyBall::all_geodesics(std::size_t index) const {
  if (!options_.record_all_geodesics) {
    throw PreconditionError("ball was enumerated without record_all_geodesics");
  }
  if (elements_[index].length == 0) return {Word()};
  std::vector<Word> out;
  for (const auto& [pred, letter] : predecessors_[index]) {
    for (Word prefix : all_geodesics(pred)) {
      prefix.push_back(letter);
      out.push_back(std::move(prefix));
    }
  }
  return out;
}

CayleyBall enumerate_ball(const GroupParams& params, int radius, const BallOptions& options) {
  if (radius < 0) throw PreconditionError("radius must be non-negative");
  CayleyBall ball(params, options);
  const std::vector<Letter> letters = alphabet(params);

  auto admit = [&](Word w, int length, CayleyBall::Key key, LevelPermutation perm) {
    const std::size_t idx = ball.elements_.size();
    ball.elements_.push_back({std::move(w), length});
    ball.perms_.push_back(std::move(perm));
    ball.buckets_[std::move(key)].push_back(idx);
    ball.predecessors_.emplace_back();
    return idx;
  };
  admit(Word(), 0, ball.key_of(Word()), LevelPermutation::identity(params, options.prefilter_depth));

  std::size_t sphere_begin = 0;
  for (int d = 0; d < radius; ++d) {
    const std::size_t sphere_end = ball.elements_.size();
    for (std::size_t idx = sphere_begin; idx < sphere_end; ++idx) {
      for (const Letter& l : letters) {
        const Word& base = ball.elements_[idx].geodesic;
        if (!base.empty() && base.back().cancels(l)) continue;
        Word candidate = base;
        candidate.push_back(l);
        LevelPermutation perm = ball.perms_[idx].then(ball.letter_perms_[letter_slot(l)]);
        CayleyBall::Key key{abelianize(params, candidate).exps, perm.images};
        if (auto found = ball.find(key, candidate)) {
          if (options.record_all_geodesics && ball.elements_[*found].length == d + 1) {
            ball.predecessors_[*found].emplace_back(idx, l);
          }
          continue;
        }
        if (ball.elements_.size() >= options.element_cap) {
          throw ResourceError("ball element cap " + std::to_string(options.element_cap) +
                              " exceeded; completed radius " + std::to_string(d));
        }
        const std::size_t fresh = admit(std::move(candidate), d + 1, std::move(key), std::move(perm));
        if (options.record_all_geodesics) ball.predecessors_[fresh].emplace_back(idx, l);
      }
    }
    sphere_begin = sphere_end;
    ball.radius_ = d + 1;
  }
  return ball;
}

std::optional<int> geodesic_length(const GroupParams& params, const Word& w, int radius_cap,
                                   const BallOptions& options) {
  check_word(params, w);
  if (radius_cap < 0) throw PreconditionError("radius cap must be non-negative");
  if (w.empty()) return 0;
  // |g| <= |w|, so a ball of radius |w| always suffices.
  const int radius = std::min(radius_cap, static_cast<int>(w.size()));
  const CayleyBall ball = enumerate_ball(params, radius, options);
  return ball.length_of(w);
}

std::vector<LemmaReport> verify_length_lemmas(const GroupParams& params, int radius,
                                              const LengthLemmaOptions& options) {
  BallOptions ball_options = options.ball;
  if (options.all_geodesics) {
    if (radius > 4) throw PreconditionError("all-geodesic mode is limited to radius <= 4");
    ball_options.record_all_geodesics = true;
  }
  return verify_length_lemmas(enumerate_ball(params, radius, ball_options), options.all_geodesics);
}

std::vector<LemmaReport> verify_length_lemmas(const CayleyBall& ball, bool all_geodesics) {
  const GroupParams& params = ball.params();
  LemmaReport sections_report{"section-length-sum", 0, {}, 0};
  LemmaReport power_report{"mth-power-sections", 0, {}, 0};
  LemmaReport drop_report{"a0-conjugate-drop", 0, {}, 0};
  LemmaReport bfs_report{"bfs-consistency", 0, {}, 0};

  for (std::size_t idx = 0; idx < ball.size(); ++idx) {
    const BallElement& g = ball.elements()[idx];
    const WreathDecomposition dec = decompose(params, g.geodesic);

    // Sum of exact section lengths is at most |g|.
    ++sections_report.instances_checked;
    int section_sum = 0;
    bool sections_known = true;
    for (const Word& sec : dec.sections) {
      if (auto len = ball.length_of(sec)) {
        section_sum += *len;
      } else {
        sections_known = false;
      }
    }
    if (!sections_known) {
      ++sections_report.unverified;
    } else if (section_sum > g.length) {
      sections_report.violations.push_back(to_string(g.geodesic) + ": section lengths sum to " +
                                           std::to_string(section_sum) + " > " +
                                           std::to_string(g.length));
    }

    // Sections of g^m when the root action is a generator of <sigma>.
    const int i = dec.root_exponent;
    if (i != 0 && std::gcd(i, params.m) == 1) {
      ++power_report.instances_checked;
      for (int k = 0; k < params.m; ++k) {
        const Word alpha = section_of_mth_power(params, g.geodesic, k);
        auto len = ball.length_of(alpha);
        if (!len || !sections_known) {
          ++power_report.unverified;
          continue;
        }
        if (*len > section_sum || section_sum > g.length) {
          power_report.violations.push_back(to_string(g.geodesic) + ": |alpha_" +
                                            std::to_string(k) + "| = " + std::to_string(*len) +
                                            ", section sum " + std::to_string(section_sum) +
                                            ", |g| = " + std::to_string(g.length));
        }
      }
    }

    // Geodesics with a_0 before a_0^{-1} lose at least two letters.
    std::vector<Word> geodesics =
        all_geodesics ? ball.all_geodesics(idx) : std::vector<Word>{g.geodesic};
    for (const Word& w : geodesics) {
      if (!has_a0_before_inverse(w)) continue;
      ++drop_report.instances_checked;
      if (!sections_known) {
        ++drop_report.unverified;
      } else if (section_sum > g.length - 2) {
        drop_report.violations.push_back(to_string(w) + ": section lengths sum to " +
                                         std::to_string(section_sum) + " > |g| - 2 = " +
                                         std::to_string(g.length - 2));
      }
    }

    if (g.length < ball.radius()) {
      for (const Letter& l : alphabet(params)) {
        ++bfs_report.instances_checked;
        Word next = g.geodesic;
        next.push_back(l);
        auto len = ball.length_of(next);
        if (!len) {
          ++bfs_report.unverified;
        } else if (*len > g.length + 1 || *len < g.length - 1) {
          bfs_report.violations.push_back(to_string(g.geodesic) + " * " + to_string(Word{l}) +
                                          " jumps from length " + std::to_string(g.length) +
                                          " to " + std::to_string(*len));
        }
      }
    }
  }
  return {sections_report, power_report, drop_report, bfs_report};
}

}  // namespace madic
