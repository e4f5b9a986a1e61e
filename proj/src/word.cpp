#include "madic/word.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "madic/errors.hpp"

namespace madic {

GroupParams::GroupParams(int arity, int generators) : m(arity), s(generators) {
  if (m < 2 || s < 2) {
    throw ParameterMismatch("group parameters need m >= 2 and s >= 2, got m=" +
                            std::to_string(m) + " s=" + std::to_string(s));
  }
}

Word::Word(std::initializer_list<Letter> letters) {
  for (const Letter& l : letters) push_back(l);
}

Word::Word(std::span<const Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) push_back(l);
}

Word Word::generator(int index, int exponent) {
  Word w;
  w.push_back({index, exponent});
  return w;
}

void Word::push_back(Letter letter) {
  if (letter.exponent != 1 && letter.exponent != -1) {
    throw ParameterMismatch("letter exponent must be +1 or -1");
  }
  if (letter.index < 0) throw ParameterMismatch("negative generator index");
  if (!letters_.empty() && letters_.back().cancels(letter)) {
    letters_.pop_back();
  } else {
    letters_.push_back(letter);
  }
}

void Word::append(const Word& other) {
  for (const Letter& l : other.letters_) push_back(l);
}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back(it->inverse());
  }
  return out;
}

Word Word::subword(std::size_t pos, std::size_t count) const {
  pos = std::min(pos, letters_.size());
  count = std::min(count, letters_.size() - pos);
  return Word(std::span<const Letter>(letters_).subspan(pos, count));
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i].index <=> b[i].index; c != 0) return c;
    // +1 sorts before -1
    if (auto c = b[i].exponent <=> a[i].exponent; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Word compose(const Word& lhs, const Word& rhs) {
  Word out = lhs;
  out.append(rhs);
  return out;
}

Word invert(const Word& w) { return w.inverse(); }

Word power(const Word& w, long long exponent) {
  const Word base = exponent < 0 ? w.inverse() : w;
  const long long n = exponent < 0 ? -exponent : exponent;
  Word out;
  for (long long i = 0; i < n; ++i) out.append(base);
  return out;
}

Word commutator(const Word& g, const Word& h) {
  Word out = g.inverse();
  out.append(h.inverse());
  out.append(g);
  out.append(h);
  return out;
}

std::vector<Letter> alphabet(const GroupParams& params) {
  std::vector<Letter> out;
  out.reserve(2 * static_cast<std::size_t>(params.s));
  for (int i = 0; i < params.s; ++i) {
    out.push_back({i, 1});
    out.push_back({i, -1});
  }
  return out;
}

void check_word(const GroupParams& params, const Word& w) {
  for (const Letter& l : w.letters()) {
    if (l.index >= params.s) {
      throw ParameterMismatch("letter a_" + std::to_string(l.index) +
                              " does not exist for s=" + std::to_string(params.s));
    }
  }
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += "a_" + std::to_string(w[i].index);
    if (w[i].exponent < 0) out += "^-1";
  }
  return out;
}

Word parse_word(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  Word out;
  while (in >> token) {
    if (token == "1" || token == "e") continue;
    if (token.size() < 3 || token.compare(0, 2, "a_") != 0) {
      throw ParameterMismatch("cannot parse letter '" + token + "'");
    }
    const char* first = token.data() + 2;
    const char* last = token.data() + token.size();
    int index = 0;
    auto [ptr, ec] = std::from_chars(first, last, index);
    if (ec != std::errc() || ptr == first) {
      throw ParameterMismatch("cannot parse letter '" + token + "'");
    }
    std::string_view rest(ptr, static_cast<std::size_t>(last - ptr));
    int exponent = 1;
    if (rest == "^-1") {
      exponent = -1;
    } else if (!rest.empty() && rest != "^1") {
      throw ParameterMismatch("cannot parse letter '" + token + "'");
    }
    out.push_back({index, exponent});
  }
  return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const Letter& l : w.letters()) {
    const auto code = static_cast<std::size_t>(2 * l.index + (l.exponent < 0 ? 1 : 0));
    h ^= code + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace madic
