#include "madic/calculus.hpp"

#include <array>
#include <deque>
#include <unordered_set>

#include "madic/errors.hpp"

namespace madic {

namespace {

int mod(long long a, int m) {
  const long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

// m^n, or 0 when the value exceeds `cap`.
std::size_t bounded_power(int m, int n, std::size_t cap) {
  std::size_t out = 1;
  for (int i = 0; i < n; ++i) {
    if (out > cap / static_cast<std::size_t>(m)) return 0;
    out *= static_cast<std::size_t>(m);
  }
  return out <= cap ? out : 0;
}

std::size_t letter_slot(Letter l) {
  return 2 * static_cast<std::size_t>(l.index) + (l.exponent < 0 ? 1 : 0);
}

class RecursionTable {
 public:
  explicit RecursionTable(const GroupParams& params) {
    table_.reserve(2 * static_cast<std::size_t>(params.s));
    for (const Letter& l : alphabet(params)) table_.push_back(letter_recursion(params, l));
  }
  const LetterRecursion& operator[](Letter l) const { return table_[letter_slot(l)]; }

 private:
  std::vector<LetterRecursion> table_;
};

}  // namespace

Vertex Vertex::parse(const GroupParams& params, std::string_view digits) {
  if (params.m > 10) {
    throw ParameterMismatch("digit-string vertices need m <= 10");
  }
  std::vector<int> path;
  path.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9' || c - '0' >= params.m) {
      throw ParameterMismatch(std::string("vertex entry '") + c + "' is not below m=" +
                              std::to_string(params.m));
    }
    path.push_back(c - '0');
  }
  return Vertex(std::move(path));
}

Vertex Vertex::rightmost(const GroupParams& params, int level) {
  return Vertex(std::vector<int>(static_cast<std::size_t>(level), params.m - 1));
}

Vertex Vertex::child(int x) const {
  Vertex out = *this;
  out.path_.push_back(x);
  return out;
}

Vertex Vertex::concat(const Vertex& tail) const {
  Vertex out = *this;
  out.path_.insert(out.path_.end(), tail.path_.begin(), tail.path_.end());
  return out;
}

std::string to_string(const Vertex& v) {
  std::string out;
  for (std::size_t i = 0; i < v.path().size(); ++i) {
    const int x = v.path()[i];
    if (x < 10) {
      out += static_cast<char>('0' + x);
    } else {
      if (i) out += ',';
      out += std::to_string(x) + ',';
    }
  }
  return out;
}

void check_vertex(const GroupParams& params, const Vertex& v) {
  for (int x : v.path()) {
    if (x < 0 || x >= params.m) {
      throw ParameterMismatch("vertex entry " + std::to_string(x) + " is not below m=" +
                              std::to_string(params.m));
    }
  }
}

bool AbelianizationVector::is_zero() const {
  for (long long e : exps) {
    if (e != 0) return false;
  }
  return true;
}

bool AbelianizationVector::is_sign_vector() const {
  for (long long e : exps) {
    if (e != 1 && e != -1) return false;
  }
  return true;
}

LevelPermutation LevelPermutation::identity(const GroupParams& params, int level) {
  const std::size_t n = bounded_power(params.m, level, kDefaultLevelCap);
  if (n == 0) throw ResourceError("level permutation exceeds the vertex cap");
  LevelPermutation p;
  p.level = level;
  p.images.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.images[i] = static_cast<std::uint32_t>(i);
  return p;
}

bool LevelPermutation::is_identity() const {
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] != i) return false;
  }
  return true;
}

LevelPermutation LevelPermutation::then(const LevelPermutation& other) const {
  LevelPermutation out;
  out.level = level;
  out.images.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) out.images[i] = other.images[images[i]];
  return out;
}

LevelPermutation LevelPermutation::inverse() const {
  LevelPermutation out;
  out.level = level;
  out.images.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    out.images[images[i]] = static_cast<std::uint32_t>(i);
  }
  return out;
}

std::uint32_t encode_vertex(const GroupParams& params, const Vertex& v) {
  std::uint64_t code = 0;
  for (int x : v.path()) code = code * static_cast<std::uint64_t>(params.m) + static_cast<std::uint64_t>(x);
  return static_cast<std::uint32_t>(code);
}

Vertex decode_vertex(const GroupParams& params, int level, std::uint32_t code) {
  std::vector<int> path(static_cast<std::size_t>(level));
  for (int d = level - 1; d >= 0; --d) {
    path[static_cast<std::size_t>(d)] = static_cast<int>(code % static_cast<std::uint32_t>(params.m));
    code /= static_cast<std::uint32_t>(params.m);
  }
  return Vertex(std::move(path));
}

LetterRecursion letter_recursion(const GroupParams& params, Letter letter) {
  if (letter.index < 0 || letter.index >= params.s) {
    throw ParameterMismatch("letter a_" + std::to_string(letter.index) +
                            " does not exist for s=" + std::to_string(params.s));
  }
  // a_0 = (1,...,1,a_{s-1}) sigma and a_i = (1,...,1,a_{i-1}) for i >= 1.
  LetterRecursion positive;
  positive.shift = letter.index == 0 ? 1 : 0;
  positive.position = params.m - 1;
  positive.section = {letter.index == 0 ? params.s - 1 : letter.index - 1, 1};
  if (letter.exponent > 0) return positive;

  // g^{-1} sends x to x - shift and has section (g_{x - shift})^{-1} at x, so
  // the nontrivial section moves from position p to p + shift.
  LetterRecursion negative;
  negative.shift = mod(-positive.shift, params.m);
  negative.position = mod(positive.position + positive.shift, params.m);
  negative.section = positive.section.inverse();
  return negative;
}

WreathDecomposition decompose(const GroupParams& params, const Word& w) {
  check_word(params, w);
  const RecursionTable table(params);
  WreathDecomposition out;
  out.sections.resize(static_cast<std::size_t>(params.m));
  int offset = 0;
  for (const Letter& l : w.letters()) {
    const LetterRecursion& rec = table[l];
    // Letter n is evaluated at k^{sigma^offset} = k + offset.
    out.sections[static_cast<std::size_t>(mod(rec.position - offset, params.m))].push_back(rec.section);
    offset = mod(offset + rec.shift, params.m);
  }
  out.root_exponent = offset;
  return out;
}

Word section(const GroupParams& params, const Word& w, int x) {
  if (x < 0 || x >= params.m) {
    throw ParameterMismatch("vertex entry " + std::to_string(x) + " is not below m=" +
                            std::to_string(params.m));
  }
  check_word(params, w);
  const RecursionTable table(params);
  Word out;
  int pos = x;
  for (const Letter& l : w.letters()) {
    const LetterRecursion& rec = table[l];
    if (pos == rec.position) out.push_back(rec.section);
    pos = mod(pos + rec.shift, params.m);
  }
  return out;
}

Word section(const GroupParams& params, const Word& w, const Vertex& u) {
  check_vertex(params, u);
  Word out = w;
  check_word(params, out);
  for (int x : u.path()) {
    if (out.empty()) break;
    out = section(params, out, x);
  }
  return out;
}

Vertex act(const GroupParams& params, const Word& w, const Vertex& u) {
  check_vertex(params, u);
  check_word(params, w);
  const RecursionTable table(params);
  std::vector<int> path = u.path();
  for (const Letter& l : w.letters()) {
    Letter current = l;
    for (int& x : path) {
      const LetterRecursion& rec = table[current];
      const int before = x;
      x = mod(x + rec.shift, params.m);
      if (before != rec.position) break;
      current = rec.section;
    }
  }
  return Vertex(std::move(path));
}

int root_exponent(const GroupParams& params, const Word& w) {
  check_word(params, w);
  long long e = 0;
  for (const Letter& l : w.letters()) {
    if (l.index == 0) e += l.exponent;
  }
  return mod(e, params.m);
}

AbelianizationVector abelianize(const GroupParams& params, const Word& w) {
  check_word(params, w);
  AbelianizationVector out;
  out.exps.assign(static_cast<std::size_t>(params.s), 0);
  for (const Letter& l : w.letters()) out.exps[static_cast<std::size_t>(l.index)] += l.exponent;
  return out;
}

bool is_identity(const GroupParams& params, const Word& w) {
  check_word(params, w);
  if (w.empty()) return true;
  std::unordered_set<Word, WordHash> visited;
  std::deque<Word> queue;
  visited.insert(w);
  queue.push_back(w);
  std::vector<long long> exps(static_cast<std::size_t>(params.s));
  while (!queue.empty()) {
    Word current = std::move(queue.front());
    queue.pop_front();
    std::fill(exps.begin(), exps.end(), 0);
    for (const Letter& l : current.letters()) exps[static_cast<std::size_t>(l.index)] += l.exponent;
    for (long long e : exps) {
      if (e != 0) return false;
    }
    WreathDecomposition d = decompose(params, current);
    for (Word& sec : d.sections) {
      if (sec.empty()) continue;
      if (visited.insert(sec).second) queue.push_back(std::move(sec));
    }
  }
  return true;
}

bool equal_elements(const GroupParams& params, const Word& lhs, const Word& rhs) {
  return is_identity(params, compose(lhs, rhs.inverse()));
}

LevelPermutation level_permutation(const GroupParams& params, const Word& w, int n,
                                   std::size_t cap) {
  if (n < 1) throw PreconditionError("level_permutation needs n >= 1");
  check_word(params, w);
  const std::size_t count = bounded_power(params.m, n, cap);
  if (count == 0) {
    throw ResourceError("level " + std::to_string(n) + " has more than " + std::to_string(cap) +
                        " vertices");
  }
  const RecursionTable table(params);
  // One table per alphabet letter, then compose along the word.
  std::vector<LevelPermutation> letters;
  for (const Letter& l : alphabet(params)) {
    LevelPermutation p;
    p.level = n;
    p.images.resize(count);
    for (std::size_t code = 0; code < count; ++code) {
      Vertex v = decode_vertex(params, n, static_cast<std::uint32_t>(code));
      std::vector<int> path = v.path();
      Letter current = l;
      for (int& x : path) {
        const LetterRecursion& rec = table[current];
        const int before = x;
        x = mod(x + rec.shift, params.m);
        if (before != rec.position) break;
        current = rec.section;
      }
      p.images[code] = encode_vertex(params, Vertex(std::move(path)));
    }
    letters.push_back(std::move(p));
  }
  LevelPermutation out;
  out.level = n;
  out.images.resize(count);
  for (std::size_t i = 0; i < count; ++i) out.images[i] = static_cast<std::uint32_t>(i);
  for (const Letter& l : w.letters()) out = out.then(letters[letter_slot(l)]);
  return out;
}

Portrait portrait(const GroupParams& params, const Word& w, int depth, std::size_t cap) {
  if (depth < 1) throw PreconditionError("portrait depth must be at least 1");
  check_word(params, w);
  std::size_t total = 0;
  std::size_t layer = 1;
  for (int d = 0; d < depth; ++d) {
    total += layer;
    if (total > cap) {
      throw ResourceError("portrait of depth " + std::to_string(depth) + " exceeds " +
                          std::to_string(cap) + " vertices");
    }
    if (d + 1 < depth) {
      if (layer > cap / static_cast<std::size_t>(params.m)) {
        throw ResourceError("portrait of depth " + std::to_string(depth) + " exceeds " +
                            std::to_string(cap) + " vertices");
      }
      layer *= static_cast<std::size_t>(params.m);
    }
  }
  Portrait out;
  out.depth = depth;
  out.vertices.reserve(total);
  out.labels.reserve(total);
  std::vector<std::pair<Vertex, Word>> current{{Vertex(), w}};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::pair<Vertex, Word>> next;
    for (auto& [v, word] : current) {
      WreathDecomposition dec = decompose(params, word);
      out.vertices.push_back(v);
      out.labels.push_back(dec.root_exponent);
      if (d + 1 < depth) {
        for (int x = 0; x < params.m; ++x) {
          next.emplace_back(v.child(x), std::move(dec.sections[static_cast<std::size_t>(x)]));
        }
      }
    }
    current = std::move(next);
  }
  return out;
}

Word section_of_mth_power(const GroupParams& params, const Word& w, int x) {
  const WreathDecomposition d = decompose(params, w);
  Word out;
  int pos = x;
  for (int k = 0; k < params.m; ++k) {
    out.append(d.sections[static_cast<std::size_t>(pos)]);
    pos = mod(pos + d.root_exponent, params.m);
  }
  return out;
}

}  // namespace madic
