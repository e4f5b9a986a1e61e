#pragma once

#include <random>
#include <vector>

#include "madic/word.hpp"
#include "oracle.hpp"

namespace testing_support {

inline oracle::Letters to_letters(const madic::Word& w) {
  oracle::Letters out;
  for (const madic::Letter& l : w.letters()) out.push_back({l.index, l.exponent});
  return out;
}

inline oracle::Letters to_letters(const madic::Word& w, long long times) {
  oracle::Letters one = to_letters(w);
  oracle::Letters out;
  for (long long i = 0; i < times; ++i) out.insert(out.end(), one.begin(), one.end());
  return out;
}

// Test-side generator, deliberately separate from the library's helpers.
inline madic::Word draw_word(std::mt19937& rng, int s, int length) {
  std::uniform_int_distribution<int> index(0, s - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  madic::Word w;
  while (static_cast<int>(w.size()) < length) {
    const madic::Letter l{index(rng), sign(rng) ? 1 : -1};
    if (!w.empty() && w.back().cancels(l)) continue;
    w.push_back(l);
  }
  return w;
}

inline madic::Word draw_commutators(std::mt19937& rng, int s, int count, int max_length) {
  std::uniform_int_distribution<int> length(1, max_length);
  madic::Word z;
  for (int i = 0; i < count; ++i) {
    const madic::Word u = draw_word(rng, s, length(rng));
    const madic::Word v = draw_word(rng, s, length(rng));
    z.append(u.inverse());
    z.append(v.inverse());
    z.append(u);
    z.append(v);
  }
  return z;
}

inline std::vector<madic::Word> all_words(int s, int max_length) {
  std::vector<madic::Word> out{madic::Word()};
  std::size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int index = 0; index < s; ++index) {
        for (int e : {1, -1}) {
          const madic::Letter l{index, e};
          if (!out[i].empty() && out[i].back().cancels(l)) continue;
          madic::Word w = out[i];
          w.push_back(l);
          out.push_back(std::move(w));
        }
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace testing_support
