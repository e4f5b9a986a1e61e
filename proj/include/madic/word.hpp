#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace madic {

// Arity of the tree (m) and number of generators (s).
struct GroupParams {
  int m;
  int s;

  GroupParams(int arity, int generators);

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

// a_index^exponent with exponent in {+1, -1}.
struct Letter {
  int index = 0;
  int exponent = 1;

  Letter inverse() const { return {index, -exponent}; }
  bool cancels(const Letter& other) const {
    return index == other.index && exponent == -other.exponent;
  }

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word over {a_i^{+1}, a_i^{-1}}. Every constructor and
/// mutator keeps the word reduced, so two words with different letters are
/// different as free-group elements (but possibly equal in the group).
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);
  explicit Word(std::span<const Letter> letters);

  static Word generator(int index, int exponent = 1);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const Letter& front() const { return letters_.front(); }
  const Letter& back() const { return letters_.back(); }

  // Appends with free cancellation against the current last letter.
  void push_back(Letter letter);
  void append(const Word& other);

  Word inverse() const;
  Word subword(std::size_t pos, std::size_t count) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
};

Word compose(const Word& lhs, const Word& rhs);
Word invert(const Word& w);
Word power(const Word& w, long long exponent);
Word commutator(const Word& g, const Word& h);  // g^-1 h^-1 g h

// Letters in canonical order: index ascending, +1 before -1.
std::vector<Letter> alphabet(const GroupParams& params);

// Throws ParameterMismatch when a letter index is not below s.
void check_word(const GroupParams& params, const Word& w);

// "a_1 a_0^-1"; the identity prints as "1".
std::string to_string(const Word& w);
// Inverse of to_string; also accepts "e" or "" for the identity.
Word parse_word(std::string_view text);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace madic
