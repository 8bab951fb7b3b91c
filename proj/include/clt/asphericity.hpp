// Asphericity toolkit: small-cancellation certificates, normal-closure
// oracles, coset transversals, conjugate-basis windows, and the two
// stable-letter rewriting moves (z-cover rewriting over A*B, stable-letter
// adjunction over F*<z>).
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "clt/error.hpp"
#include "clt/stallings.hpp"
#include "clt/word.hpp"

namespace clt {

// ---- permutations ----------------------------------------------------------

using Permutation = std::vector<int>;

inline void validate_permutation(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v])
      throw invalid_input("permutation: not a bijection");
    seen[v] = 1;
  }
}

inline Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_identity(const Permutation& p) {
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i] != i) return false;
  return true;
}

inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw invalid_input("permutation compose: degree mismatch");
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

inline Permutation inverse_permutation(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

inline Permutation permutation_image(const Word& w, const std::vector<Permutation>& images) {
  if (images.empty()) throw invalid_input("permutation image: no generator images");
  std::size_t deg = images[0].size();
  for (const Permutation& p : images)
    if (p.size() != deg) throw invalid_input("permutation image: mixed degrees");
  if (max_gen_index(w) >= static_cast<int>(images.size()))
    throw invalid_input("permutation image: generator without an image");
  Permutation acc = identity_permutation(static_cast<int>(deg));
  for (Letter l : w.letters()) {
    const Permutation& g = images[gen_of(l)];
    acc = compose(acc, l < 0 ? inverse_permutation(g) : g);
  }
  return acc;
}

inline long long permutation_order(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  long long ord = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

// ---- small cancellation ------------------------------------------------------

namespace detail {

inline std::vector<Word> all_rotations(const Word& w) {
  std::vector<Word> out;
  out.reserve(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) out.push_back(rotate(w, k));
  return out;
}

inline int common_prefix(const Word& x, const Word& y) {
  std::size_t n = std::min(x.size(), y.size());
  std::size_t i = 0;
  while (i < n && x[i] == y[i]) ++i;
  return static_cast<int>(i);
}

}  // namespace detail

// C'(1/6) certificate. Pieces are common prefixes of two distinct cyclic
// shifts of r or r^{-1}; a repeated shift (proper power, or r conjugate to
// its inverse by rotation) counts as a full-length piece.
inline std::pair<bool, int> is_sixth(const Word& r) {
  if (r.empty() || !is_cyclically_reduced(r))
    throw invalid_input("is_sixth: relator must be nonempty and cyclically reduced");
  std::vector<Word> shifts = detail::all_rotations(r);
  std::vector<Word> back = detail::all_rotations(r.inverse());
  shifts.insert(shifts.end(), back.begin(), back.end());
  std::set<Word> seen;
  for (const Word& s : shifts)
    if (!seen.insert(s).second) return {false, static_cast<int>(r.size())};
  int piece = 0;
  for (std::size_t i = 0; i < shifts.size(); ++i)
    for (std::size_t j = i + 1; j < shifts.size(); ++j)
      piece = std::max(piece, detail::common_prefix(shifts[i], shifts[j]));
  return {6LL * piece < static_cast<long long>(r.size()), piece};
}

// Dehn reduction: replace the leftmost longest subword matching more than
// half of a cyclic shift of r^{+-1} by the shorter complement, to a fixed
// point. For C'(1/6) relators the fixed point is the identity exactly on
// the normal closure.
inline Word dehn_reduce(Word w, const Word& r) {
  if (!is_sixth(r).first) throw invalid_oracle("dehn_reduce: relator is not C'(1/6)");
  std::vector<Word> shifts = detail::all_rotations(r);
  std::vector<Word> back = detail::all_rotations(r.inverse());
  shifts.insert(shifts.end(), back.begin(), back.end());
  const long long n = static_cast<long long>(r.size());
  for (;;) {
    int best_len = 0;
    std::size_t best_pos = 0;
    const Word* best_shift = nullptr;
    const auto& ls = w.letters();
    for (std::size_t i = 0; i < ls.size(); ++i) {
      for (const Word& u : shifts) {
        std::size_t cap = std::min(ls.size() - i, u.size());
        std::size_t m = 0;
        while (m < cap && ls[i + m] == u[m]) ++m;
        if (static_cast<int>(m) > best_len) {
          best_len = static_cast<int>(m);
          best_pos = i;
          best_shift = &u;
        }
      }
    }
    if (2LL * best_len <= n) return w;
    std::vector<Letter> next(ls.begin(), ls.begin() + best_pos);
    for (std::size_t j = best_shift->size(); j > static_cast<std::size_t>(best_len); --j)
      next.push_back(-(*best_shift)[j - 1]);
    next.insert(next.end(), ls.begin() + best_pos + best_len, ls.end());
    w = Word(std::move(next));
  }
}

// ---- normal-closure oracles --------------------------------------------------

enum class Verdict { yes, no, unknown };

class WordProblemOracle {
 public:
  enum class Kind { abelianized, dehn, bounded_search, finite_quotient };

  static WordProblemOracle abelianized() { return WordProblemOracle(Kind::abelianized); }
  static WordProblemOracle dehn() { return WordProblemOracle(Kind::dehn); }
  static WordProblemOracle bounded_search(int max_factors, int max_conjugator) {
    if (max_factors < 0 || max_conjugator < 0)
      throw invalid_input("bounded search oracle: bounds must be nonnegative");
    WordProblemOracle o(Kind::bounded_search);
    o.max_factors_ = max_factors;
    o.max_conjugator_ = max_conjugator;
    return o;
  }
  static WordProblemOracle finite_quotient(std::vector<Permutation> images) {
    if (images.empty()) throw invalid_input("finite quotient oracle: no images");
    std::size_t deg = images[0].size();
    for (const Permutation& p : images) {
      if (p.size() != deg) throw invalid_input("finite quotient oracle: mixed degrees");
      validate_permutation(p);
    }
    WordProblemOracle o(Kind::finite_quotient);
    o.images_ = std::move(images);
    return o;
  }

  Kind kind() const { return kind_; }
  int max_factors() const { return max_factors_; }
  int max_conjugator() const { return max_conjugator_; }
  const std::vector<Permutation>& images() const { return images_; }

 private:
  explicit WordProblemOracle(Kind k) : kind_(k) {}
  Kind kind_;
  int max_factors_ = 0;
  int max_conjugator_ = 0;
  std::vector<Permutation> images_;
};

namespace detail {

// Retraction killing one generator; kernel is exactly its normal closure.
inline Word drop_generator(const Word& w, int gen) {
  std::vector<Letter> v;
  for (Letter l : w.letters())
    if (gen_of(l) != gen) v.push_back(l);
  return Word(std::move(v));
}

// Bounded expression search: is w a product of at most max_factors
// conjugates of relators^{+-1} with conjugator length at most max_conj?
// Meet-in-the-middle over a table of half-depth products, memoized per
// parameter tuple so repeated queries share one build. A capped table can
// only miss witnesses, never invent them.
inline bool closure_search(const Word& w, const std::vector<Word>& relators, int max_factors,
                           int max_conj, int rank) {
  if (w.empty()) return true;
  if (max_factors < 1) return false;
  using Table = std::unordered_map<Word, int, word_hash>;
  using Key = std::tuple<std::vector<Word>, int, int, int>;
  static std::mutex lock;
  static std::map<Key, std::shared_ptr<const Table>> memo;

  const int half = (max_factors + 1) / 2;
  const int rest = max_factors - half;
  std::shared_ptr<const Table> table;
  {
    std::scoped_lock guard(lock);
    Key key{relators, max_factors, max_conj, rank};
    auto it = memo.find(key);
    if (it != memo.end()) {
      table = it->second;
    } else {
      std::vector<Word> factors;
      std::set<Word> fs;
      for (const Word& u : enumerate_ball(rank, max_conj))
        for (const Word& r : relators)
          for (int s : {+1, -1}) {
            Word f = u * (s > 0 ? r : r.inverse()) * u.inverse();
            if (!f.empty() && fs.insert(f).second) factors.push_back(f);
          }
      auto t = std::make_shared<Table>();
      const std::size_t cap = 300000;
      t->emplace(Word(), 0);
      std::vector<Word> frontier{Word()};
      for (int d = 1; d <= half && t->size() < cap; ++d) {
        std::vector<Word> next;
        for (const Word& p : frontier) {
          for (const Word& f : factors) {
            if (t->size() >= cap) break;
            Word q = p * f;
            if (t->emplace(q, d).second) next.push_back(q);
          }
        }
        frontier = std::move(next);
      }
      memo.emplace(std::move(key), t);
      table = t;
    }
  }
  for (const auto& [y, depth] : *table) {
    if (depth > rest) continue;
    if (table->count(w * y.inverse())) return true;
  }
  return false;
}

inline std::optional<long long> multiple_ratio(const std::vector<long long>& wv,
                                               const std::vector<long long>& rv) {
  long long c = 0;
  for (std::size_t i = 0; i < rv.size(); ++i) {
    if (rv[i] == 0) {
      if (wv[i] != 0) return std::nullopt;
      continue;
    }
    if (wv[i] % rv[i] != 0) return std::nullopt;
    long long q = wv[i] / rv[i];
    if (c != 0 && q != c) return std::nullopt;
    c = q;
  }
  for (std::size_t i = 0; i < rv.size(); ++i)
    if (wv[i] != c * rv[i]) return std::nullopt;
  return c;
}

}  // namespace detail

inline Verdict in_normal_closure(const Word& w, const Word& r, const WordProblemOracle& oracle) {
  if (r.empty()) throw invalid_input("in_normal_closure: identity relator");
  switch (oracle.kind()) {
    case WordProblemOracle::Kind::abelianized: {
      Word cab = commutator(Word::generator(0), Word::generator(1));
      if (r == cab || r == cab.inverse()) {
        if (max_gen_index(w) > 1)
          throw invalid_oracle("abelianized oracle: word leaves rank 2");
        auto v = exponent_vector(w, 2);
        return (v[0] == 0 && v[1] == 0) ? Verdict::yes : Verdict::no;
      }
      if (r.size() == 1)
        return detail::drop_generator(w, gen_of(r[0])).empty() ? Verdict::yes : Verdict::no;
      throw invalid_oracle("abelianized oracle: relator outside the whitelist");
    }
    case WordProblemOracle::Kind::dehn:
      return dehn_reduce(w, r).empty() ? Verdict::yes : Verdict::no;
    case WordProblemOracle::Kind::bounded_search: {
      if (w.empty()) return Verdict::yes;
      int rank = std::max(max_gen_index(w), max_gen_index(r)) + 1;
      auto rv = exponent_vector(r, rank);
      auto wv = exponent_vector(w, rank);
      bool r_zero = std::all_of(rv.begin(), rv.end(), [](long long x) { return x == 0; });
      if (r_zero) {
        if (!std::all_of(wv.begin(), wv.end(), [](long long x) { return x == 0; }))
          return Verdict::unknown;
      } else {
        auto c = detail::multiple_ratio(wv, rv);
        if (!c || std::llabs(*c) > oracle.max_factors()) return Verdict::unknown;
      }
      return detail::closure_search(w, {r}, oracle.max_factors(), oracle.max_conjugator(), rank)
                 ? Verdict::yes
                 : Verdict::unknown;
    }
    case WordProblemOracle::Kind::finite_quotient: {
      const auto& images = oracle.images();
      int need = std::max(max_gen_index(w), max_gen_index(r)) + 1;
      if (need > static_cast<int>(images.size()))
        throw invalid_oracle("finite quotient oracle: generator without an image");
      if (!is_identity(permutation_image(r, images)))
        throw invalid_oracle("finite quotient oracle: images do not kill the relator");
      return is_identity(permutation_image(w, images)) ? Verdict::unknown : Verdict::no;
    }
  }
  throw invalid_state("in_normal_closure: unreachable");
}

// ---- coset transversals --------------------------------------------------------

struct Transversal {
  std::vector<Word> representatives;
  Word relator;
  Word relator_root;
  int rank = 0;
  int radius = 0;
  bool complete = false;
};

// Greedy shortlex transversal for the right action of <<r>>.<root r> on F,
// within the radius-L ball. Right-action convention: x ~ w when
// x^{-1} w (root r)^{-k} lies in <<r>> for some |k| <= L.
inline Transversal coset_transversal(int rank, const Word& r, const WordProblemOracle& oracle,
                                     int L) {
  if (rank < 1) throw invalid_input("coset_transversal: rank must be positive");
  if (r.empty() || !is_cyclically_reduced(r))
    throw invalid_input("coset_transversal: relator must be nonempty and cyclically reduced");
  if (L < 0) throw invalid_input("coset_transversal: negative radius");
  Transversal t;
  t.relator = r;
  t.relator_root = root(r).root;
  t.rank = rank;
  t.radius = L;
  t.complete = true;
  for (const Word& w : enumerate_ball(rank, L)) {
    bool matched = false;
    for (const Word& x : t.representatives) {
      for (int k = -L; k <= L && !matched; ++k) {
        Verdict v = in_normal_closure(x.inverse() * w * pow(t.relator_root, -k), r, oracle);
        if (v == Verdict::yes)
          matched = true;
        else if (v == Verdict::unknown)
          t.complete = false;
      }
      if (matched) break;
    }
    if (!matched) t.representatives.push_back(w);
  }
  return t;
}

// ---- conjugate-basis windows ------------------------------------------------------

struct CLWindowReport {
  std::vector<Word> conjugates;
  int rank = 0;
  bool independent = false;
  bool coset_certified = false;
};

// The desk-scale content of asphericity: the conjugates of r over a coset
// transversal form a free basis of their span; folding certifies each window.
inline CLWindowReport cl_basis_window(const Word& r, const Transversal& X) {
  if (X.representatives.empty()) throw invalid_input("cl_basis_window: empty transversal");
  if (r.empty()) throw invalid_input("cl_basis_window: identity relator");
  CLWindowReport rep;
  std::set<Word> seen;
  for (const Word& x : X.representatives) {
    Word c = x * r * x.inverse();
    if (seen.insert(c).second) rep.conjugates.push_back(c);
  }
  rep.rank = graph_rank(build_and_fold(rep.conjugates));
  rep.independent = rep.rank == static_cast<int>(rep.conjugates.size());
  rep.coset_certified = X.complete;
  return rep;
}

struct WhiteheadWindowReport {
  std::vector<Word> transversal;
  bool basis_certified = false;
  std::vector<Word> unverified;
  int bound = 0;
  bool certified() const { return basis_certified && unverified.empty(); }
};

// Windowed Whitehead-subset check: dedupe the family by conjugacy, certify
// the transversal as a free basis, then check the generators against the
// span of conjugates with conjugator length at most `bound`.
inline WhiteheadWindowReport verify_whitehead_window(const std::vector<Word>& family,
                                                     const std::vector<Word>& gens, int bound) {
  if (bound < 0) throw invalid_input("verify_whitehead_window: negative bound");
  WhiteheadWindowReport rep;
  rep.bound = bound;
  for (const Word& y : family) {
    if (y.empty()) throw invalid_input("verify_whitehead_window: identity in the family");
    bool fresh = true;
    for (const Word& t : rep.transversal)
      if (are_conjugate(t, y)) {
        fresh = false;
        break;
      }
    if (fresh) rep.transversal.push_back(y);
  }
  rep.basis_certified = rep.transversal.empty() || is_free_basis(rep.transversal);
  int rank = 1;
  for (const Word& y : family) rank = std::max(rank, max_gen_index(y) + 1);
  for (const Word& g : gens) rank = std::max(rank, max_gen_index(g) + 1);
  std::set<Word> fam;
  for (const Word& t : rep.transversal)
    for (const Word& c : enumerate_ball(rank, bound)) fam.insert(c * t * c.inverse());
  SubgroupGraph span = build_and_fold(std::vector<Word>(fam.begin(), fam.end()));
  for (const Word& g : gens)
    if (!is_member(g, span)) rep.unverified.push_back(g);
  return rep;
}

// ---- z-cover rewriting -----------------------------------------------------------

// F = A*B with designated letters a (generator 0) and b (generator rank_a),
// both grading 1; the grading extends to a map onto Z whose kernel is
// N = N_A * N_B * < t_i : i in Z >, t_i = a^i (a b^{-1}) a^{-i}.
struct FreeProductGrading {
  int rank_a = 0;
  int rank_b = 0;
  std::vector<long long> values;

  FreeProductGrading(int ra, int rb, std::vector<long long> v)
      : rank_a(ra), rank_b(rb), values(std::move(v)) {
    if (rank_a < 1 || rank_b < 1)
      throw invalid_input("free product grading: both factors need a generator");
    if (static_cast<int>(values.size()) != rank_a + rank_b)
      throw invalid_input("free product grading: one value per generator");
    if (values[0] != 1 || values[static_cast<std::size_t>(rank_a)] != 1)
      throw invalid_input("free product grading: designated letters must grade 1");
  }

  static FreeProductGrading standard(int ra, int rb) {
    return FreeProductGrading(ra, rb, std::vector<long long>(static_cast<std::size_t>(ra + rb), 1));
  }

  int rank() const { return rank_a + rank_b; }
  bool in_a(int gen) const { return gen < rank_a; }
  int letter_a() const { return 0; }
  int letter_b() const { return rank_a; }

  long long grade(const Word& w) const {
    long long s = 0;
    for (Letter l : w.letters()) {
      if (gen_of(l) >= rank()) throw invalid_input("grading: generator outside the free product");
      s += l < 0 ? -values[gen_of(l)] : values[gen_of(l)];
    }
    return s;
  }
};

struct ZSyllable {
  enum class Kind { factor_a, factor_b, stable };
  Kind kind = Kind::factor_a;
  Word word;
  long long index = 0;
  int sign = +1;
};

struct ZCoverExpression {
  std::vector<ZSyllable> syllables;
  std::set<long long> indices;
};

namespace detail {

inline void push_syllable(std::vector<ZSyllable>& out, ZSyllable s) {
  if (s.kind != ZSyllable::Kind::stable && s.word.empty()) return;
  while (true) {
    if (out.empty()) {
      out.push_back(std::move(s));
      return;
    }
    ZSyllable& top = out.back();
    if (s.kind != ZSyllable::Kind::stable && top.kind == s.kind) {
      Word merged = top.word * s.word;
      out.pop_back();
      if (merged.empty()) return;
      s.word = std::move(merged);
      continue;
    }
    if (s.kind == ZSyllable::Kind::stable && top.kind == ZSyllable::Kind::stable &&
        top.index == s.index && top.sign == -s.sign) {
      out.pop_back();
      return;
    }
    out.push_back(std::move(s));
    return;
  }
}

// Stable-letter run taking the cover from `level` down to the base `off`;
// evaluates to a^level b^{-(level-off)} a^{-off}.
inline std::vector<std::pair<long long, int>> stable_run(long long level, long long off) {
  std::vector<std::pair<long long, int>> run;
  if (level > off)
    for (long long i = level - 1; i >= off; --i) run.push_back({i, +1});
  else
    for (long long i = level; i < off; ++i) run.push_back({i, -1});
  return run;
}

}  // namespace detail

inline Word stable_letter_word(const FreeProductGrading& g, long long index, int sign = +1) {
  Word a = Word::generator(g.letter_a());
  Word b = Word::generator(g.letter_b());
  Word t = pow(a, index + 1) * b.inverse() * pow(a, -index);
  return sign < 0 ? t.inverse() : t;
}

// Rewrites a kernel word over N_A * N_B * <t_i>. With offset j the middle
// syllables land in the a^j-conjugated copy of N_B, realizing the shifted
// decompositions behind the index law J_j u {j} = J_{j+1} u {j}.
inline ZCoverExpression z_cover_rewrite(const FreeProductGrading& g, const Word& w,
                                        long long offset = 0) {
  if (g.grade(w) != 0)
    throw precondition_violation("z_cover_rewrite: word must have grading zero");
  Word a = Word::generator(g.letter_a());
  Word b = Word::generator(g.letter_b());
  std::vector<ZSyllable> out;
  auto emit = [&](const std::vector<std::pair<long long, int>>& run, bool invert) {
    if (!invert) {
      for (auto [i, s] : run)
        detail::push_syllable(out, ZSyllable{ZSyllable::Kind::stable, Word(), i, s});
    } else {
      for (auto it = run.rbegin(); it != run.rend(); ++it)
        detail::push_syllable(out, ZSyllable{ZSyllable::Kind::stable, Word(), it->first, -it->second});
    }
  };
  long long level = 0;
  for (Letter l : w.letters()) {
    int gen = gen_of(l);
    long long gr = l < 0 ? -g.values[gen] : g.values[gen];
    Word lw = Word::generator(gen, l < 0 ? -1 : +1);
    if (g.in_a(gen)) {
      detail::push_syllable(
          out, ZSyllable{ZSyllable::Kind::factor_a, pow(a, level) * lw * pow(a, -(level + gr)), 0, +1});
    } else {
      emit(detail::stable_run(level, offset), false);
      Word mid = pow(a, offset) * pow(b, level - offset) * lw * pow(b, -(level - offset + gr)) *
                 pow(a, -offset);
      detail::push_syllable(out, ZSyllable{ZSyllable::Kind::factor_b, mid, 0, +1});
      emit(detail::stable_run(level + gr, offset), true);
    }
    level += gr;
  }
  if (level != 0) throw invalid_state("z_cover_rewrite: level did not return to zero");
  ZCoverExpression e;
  e.syllables = std::move(out);
  for (const ZSyllable& s : e.syllables)
    if (s.kind == ZSyllable::Kind::stable) e.indices.insert(s.index);
  return e;
}

inline Word evaluate_z_cover(const FreeProductGrading& g, const ZCoverExpression& e) {
  Word acc;
  for (const ZSyllable& s : e.syllables)
    acc = acc * (s.kind == ZSyllable::Kind::stable ? stable_letter_word(g, s.index, s.sign)
                                                   : s.word);
  return acc;
}

// ---- stable-letter adjunction -------------------------------------------------------

struct StableLetterReport {
  int base_rank = 0;
  int extended_rank = 0;
  Word relator;
  std::vector<Word> factor_window;
  std::vector<Word> kernel_window;
  bool window_independent = false;
  std::string note;
};

// Adjoin z with defining relator f z^{-1}. The kernel of the extended map
// to Z splits as (base kernel) * < f^i (f z^{-1}) f^{-i} : i in Z >; the
// report folds a window of both parts and certifies independence.
inline StableLetterReport adjoin_stable_letter(int rank, const Word& f,
                                               const std::vector<long long>& hom, int window = 3) {
  if (rank < 1) throw invalid_input("adjoin_stable_letter: rank must be positive");
  if (static_cast<int>(hom.size()) != rank)
    throw invalid_input("adjoin_stable_letter: one grading value per generator");
  if (f.empty() || max_gen_index(f) >= rank)
    throw invalid_input("adjoin_stable_letter: f must be a word over the base group");
  if (window < 0) throw invalid_input("adjoin_stable_letter: negative window");
  long long hf = 0;
  for (Letter l : f.letters()) hf += l < 0 ? -hom[gen_of(l)] : hom[gen_of(l)];
  if (hf != 1 && hf != -1)
    throw precondition_violation("adjoin_stable_letter: f must map to a generator of the image");
  StableLetterReport rep;
  rep.base_rank = rank;
  rep.extended_rank = rank + 1;
  rep.relator = f * Word::generator(rank).inverse();
  std::set<Word> seen;
  for (int i = -window; i <= window; ++i) {
    Word c = pow(f, i) * rep.relator * pow(f, -i);
    if (seen.insert(c).second) rep.factor_window.push_back(c);
  }
  for (int x = 0; x < rank; ++x)
    for (int i = -window; i <= window; ++i) {
      Word t = pow(f, i) * Word::generator(x) * pow(f, -(i + hom[x] * hf));
      if (!t.empty() && seen.insert(t).second) rep.kernel_window.push_back(t);
    }
  std::vector<Word> all = rep.factor_window;
  all.insert(all.end(), rep.kernel_window.begin(), rep.kernel_window.end());
  rep.window_independent = graph_rank(build_and_fold(all)) == static_cast<int>(all.size());
  rep.note =
      "extended kernel = (base kernel) * (free factor on the conjugates of the new relator)";
  return rep;
}

}  // namespace clt
