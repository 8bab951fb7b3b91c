#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "clt/error.hpp"

namespace clt {

// A letter is a nonzero integer: +k is generator k-1, -k its inverse.
using Letter = std::int32_t;

inline int gen_of(Letter l) { return (l > 0 ? l : -l) - 1; }
inline bool is_inverse_letter(Letter l) { return l < 0; }

// Total order a < a^-1 < b < b^-1 < ... used for shortlex and rotations.
inline int letter_key(Letter l) { return 2 * gen_of(l) + (l < 0 ? 1 : 0); }

namespace detail {
inline void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == -l)
    out.pop_back();
  else
    out.push_back(l);
}
}  // namespace detail

// Freely reduced word over some free group; empty sequence is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> raw) {
    letters_.reserve(raw.size());
    for (Letter l : raw) {
      if (l == 0) throw invalid_input("word: zero letter");
      detail::push_reduced(letters_, l);
    }
  }

  static Word generator(int index, int sign = +1) {
    return Word({sign > 0 ? Letter(index + 1) : Letter(-(index + 1))});
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return letters_ != o.letters_; }

  Word inverse() const {
    std::vector<Letter> v(letters_.rbegin(), letters_.rend());
    for (Letter& l : v) l = -l;
    Word w;
    w.letters_ = std::move(v);  // inverse of reduced word is reduced
    return w;
  }

  Word operator*(const Word& o) const {
    std::vector<Letter> v = letters_;
    for (Letter l : o.letters_) detail::push_reduced(v, l);
    Word w;
    w.letters_ = std::move(v);
    return w;
  }

  friend bool operator<(const Word& x, const Word& y) {  // shortlex
    if (x.size() != y.size()) return x.size() < y.size();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != y[i]) return letter_key(x[i]) < letter_key(y[i]);
    return false;
  }

 private:
  std::vector<Letter> letters_;
};

inline Word reduce(const std::vector<Letter>& raw) { return Word(raw); }

inline Word pow(const Word& w, long long n) {
  Word base = n < 0 ? w.inverse() : w;
  if (n < 0) n = -n;
  Word acc;
  for (long long i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

// u w u^-1
inline Word conjugate(const Word& u, const Word& w) {
  return u * w * u.inverse();
}

inline Word commutator(const Word& x, const Word& y) {
  return x * y * x.inverse() * y.inverse();
}

struct word_hash {
  std::size_t operator()(const Word& w) const {
    std::uint64_t h = 1469598103934665603ull;
    for (Letter l : w.letters()) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(l));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline int max_gen_index(const Word& w) {
  int m = -1;
  for (Letter l : w.letters()) m = std::max(m, gen_of(l));
  return m;
}

inline std::set<int> support(const Word& w) {
  std::set<int> s;
  for (Letter l : w.letters()) s.insert(gen_of(l));
  return s;
}

inline long long exponent_sum(const Word& w, int gen) {
  long long e = 0;
  for (Letter l : w.letters())
    if (gen_of(l) == gen) e += (l > 0 ? 1 : -1);
  return e;
}

inline std::vector<long long> exponent_vector(const Word& w, int rank) {
  std::vector<long long> v(rank, 0);
  for (Letter l : w.letters()) {
    if (gen_of(l) >= rank) throw invalid_input("exponent_vector: generator out of range");
    v[gen_of(l)] += (l > 0 ? 1 : -1);
  }
  return v;
}

// w = u * c * u^-1 with c cyclically reduced, concatenation cancellation-free.
inline std::pair<Word, Word> cyclically_reduce(const Word& w) {
  const auto& ls = w.letters();
  std::size_t i = 0, j = ls.size();
  while (i + 1 < j && ls[i] == -ls[j - 1]) {
    ++i;
    --j;
  }
  Word u(std::vector<Letter>(ls.begin(), ls.begin() + i));
  Word c(std::vector<Letter>(ls.begin() + i, ls.begin() + j));
  return {c, u};
}

inline bool is_cyclically_reduced(const Word& w) {
  return w.empty() || w.letters().front() != -w.letters().back();
}

inline Word rotate(const Word& w, std::size_t k) {
  const auto& ls = w.letters();
  std::vector<Letter> v;
  v.reserve(ls.size());
  v.insert(v.end(), ls.begin() + k, ls.end());
  v.insert(v.end(), ls.begin(), ls.begin() + k);
  return Word(v);
}

// Conjugacy class of a word, stored as the lexicographically least rotation
// of its cyclic reduction (letter order a < a^-1 < b < b^-1 < ...).
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(const Word& w) {
    Word c = cyclically_reduce(w).first;
    rep_ = c;
    for (std::size_t k = 1; k < c.size(); ++k) {
      Word r = rotate(c, k);
      if (lex_less(r, rep_)) rep_ = r;
    }
  }
  const Word& rep() const { return rep_; }
  std::size_t size() const { return rep_.size(); }
  bool operator==(const CyclicWord& o) const { return rep_ == o.rep_; }
  bool operator!=(const CyclicWord& o) const { return rep_ != o.rep_; }
  bool operator<(const CyclicWord& o) const {
    if (rep_.size() != o.rep_.size()) return rep_.size() < o.rep_.size();
    return lex_less(rep_, o.rep_);
  }

 private:
  static bool lex_less(const Word& x, const Word& y) {
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
      if (x[i] != y[i]) return letter_key(x[i]) < letter_key(y[i]);
    return x.size() < y.size();
  }
  Word rep_;
};

struct RootData {
  Word root;
  long long exponent = 1;
};

// Maximal-exponent factorization w = root^exponent; root(1) = (1, 1).
inline RootData root(const Word& w) {
  if (w.empty()) return {Word(), 1};
  auto [c, u] = cyclically_reduce(w);
  const auto& ls = c.letters();
  std::size_t n = ls.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = ls[i] == ls[i % d];
    if (periodic) {
      Word base(std::vector<Letter>(ls.begin(), ls.begin() + d));
      return {u * base * u.inverse(), static_cast<long long>(n / d)};
    }
  }
  return {w, 1};  // unreachable: d = n always periodic
}

// Conjugator u with u w1 u^-1 = w2, if any; smallest rotation offset wins.
inline std::optional<Word> are_conjugate(const Word& w1, const Word& w2) {
  auto [c1, u1] = cyclically_reduce(w1);
  auto [c2, u2] = cyclically_reduce(w2);
  if (c1.size() != c2.size()) return std::nullopt;
  if (c1.empty()) return Word();
  for (std::size_t k = 0; k < c1.size(); ++k) {
    if (rotate(c1, k) == c2) {
      Word p(std::vector<Letter>(c1.letters().begin(), c1.letters().begin() + k));
      return u2 * p.inverse() * u1.inverse();
    }
  }
  return std::nullopt;
}

// Generator of the centralizer C_F(w) = <root of w>.
inline Word centralizer_generator(const Word& w) {
  if (w.empty()) throw degenerate_input("centralizer_generator: identity has non-cyclic centralizer");
  return root(w).root;
}

// All reduced words of length <= radius, in shortlex order.
inline std::vector<Word> enumerate_ball(int rank, int radius) {
  if (rank < 1) throw invalid_input("enumerate_ball: rank must be positive");
  std::vector<Letter> order;
  for (int g = 0; g < rank; ++g) {
    order.push_back(Letter(g + 1));
    order.push_back(Letter(-(g + 1)));
  }
  std::vector<Word> ball{Word()};
  std::vector<Word> layer{Word()};
  for (int i = 1; i <= radius; ++i) {
    std::vector<Word> next;
    next.reserve(layer.size() * (2 * rank));
    for (const Word& w : layer)
      for (Letter l : order) {
        if (!w.empty() && w.letters().back() == -l) continue;
        std::vector<Letter> v = w.letters();
        v.push_back(l);
        next.push_back(Word(std::move(v)));
      }
    ball.insert(ball.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return ball;
}

// ---- text form -------------------------------------------------------------
// Compact form "abAB" (uppercase = inverse) for single-letter alphabets;
// token form "a b^-1 x3^2" accepted everywhere.

struct Alphabet {
  int rank = 0;
  std::vector<std::string> names;

  static Alphabet standard(int rank) {
    Alphabet a;
    a.rank = rank;
    for (int i = 0; i < rank; ++i) {
      if (i < 26)
        a.names.push_back(std::string(1, char('a' + i)));
      else
        a.names.push_back("x" + std::to_string(i + 1));
    }
    return a;
  }

  static Alphabet named(std::vector<std::string> names) {
    Alphabet a;
    a.rank = static_cast<int>(names.size());
    a.names = std::move(names);
    return a;
  }

  bool single_char() const {
    return std::all_of(names.begin(), names.end(), [](const std::string& n) {
      return n.size() == 1 && std::islower(static_cast<unsigned char>(n[0]));
    });
  }

  int index_of(const std::string& name) const {
    for (int i = 0; i < rank; ++i)
      if (names[i] == name) return i;
    return -1;
  }
};

namespace detail {

inline Word parse_compact(const std::string& s, const Alphabet& a) {
  std::vector<Letter> v;
  for (char ch : s) {
    if (!std::isalpha(static_cast<unsigned char>(ch)))
      throw invalid_input(std::string("word parse: unexpected character '") + ch + "'");
    char low = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    int idx = a.index_of(std::string(1, low));
    if (idx < 0) throw invalid_input(std::string("word parse: unknown generator '") + low + "'");
    v.push_back(std::isupper(static_cast<unsigned char>(ch)) ? Letter(-(idx + 1)) : Letter(idx + 1));
  }
  return Word(v);
}

inline Word parse_tokens(const std::string& s, const Alphabet& a) {
  std::istringstream in(s);
  std::string tok;
  std::vector<Letter> v;
  while (in >> tok) {
    if (tok == "1") continue;
    long long exp = 1;
    std::string name = tok;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string e = tok.substr(caret + 1);
      try {
        exp = std::stoll(e);
      } catch (const std::exception&) {
        throw invalid_input("word parse: bad exponent in token '" + tok + "'");
      }
    }
    int idx = a.index_of(name);
    int sign = +1;
    if (idx < 0 && name.size() == 1 && std::isupper(static_cast<unsigned char>(name[0]))) {
      idx = a.index_of(std::string(1, static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])))));
      sign = -1;
    }
    if (idx < 0) throw invalid_input("word parse: unknown generator '" + name + "'");
    long long reps = exp < 0 ? -exp : exp;
    Letter l = (exp < 0 ? -sign : sign) > 0 ? Letter(idx + 1) : Letter(-(idx + 1));
    for (long long i = 0; i < reps; ++i) v.push_back(l);
  }
  return Word(v);
}

}  // namespace detail

inline Word parse_word(const std::string& text, const Alphabet& a) {
  std::string s = text;
  auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  if (s.empty() || s == "1") return Word();
  bool tokenish = s.find(' ') != std::string::npos || s.find('^') != std::string::npos;
  if (!tokenish && a.single_char()) return detail::parse_compact(s, a);
  return detail::parse_tokens(s, a);
}

inline Word parse_word(const std::string& text, int rank) {
  return parse_word(text, Alphabet::standard(rank));
}

inline std::string print_word(const Word& w, const Alphabet& a) {
  if (w.empty()) return "1";
  if (a.single_char()) {
    std::string s;
    for (Letter l : w.letters()) {
      char c = a.names[gen_of(l)][0];
      s += (l < 0 ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
    }
    return s;
  }
  std::string s;
  std::size_t i = 0;
  const auto& ls = w.letters();
  while (i < ls.size()) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long long e = static_cast<long long>(j - i) * (ls[i] < 0 ? -1 : 1);
    if (!s.empty()) s += ' ';
    s += a.names[gen_of(ls[i])];
    if (e != 1) s += "^" + std::to_string(e);
    i = j;
  }
  return s;
}

inline std::string print_word(const Word& w, int rank_hint = 26) {
  int need = max_gen_index(w) + 1;
  return print_word(w, Alphabet::standard(std::max(need, std::min(rank_hint, 26))));
}

}  // namespace clt
