#pragma once

#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <clt/asphericity.hpp>
#include <clt/error.hpp>
#include <clt/smith.hpp>
#include <clt/trees.hpp>
#include <clt/word.hpp>

namespace clt {

// ---- group ring ------------------------------------------------------------
// Formal integer combinations of group elements. Support stays reduced:
// no duplicate words, no zero coefficients.

class GroupRingElement {
 public:
  GroupRingElement() = default;

  static GroupRingElement of(const Word& w, long long c = 1) {
    GroupRingElement e;
    e.add(w, c);
    return e;
  }
  static GroupRingElement one() { return of(Word()); }

  GroupRingElement& add(const Word& w, long long c) {
    if (c == 0) return *this;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
    return *this;
  }

  const std::map<Word, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long long coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0 : it->second;
  }

  // Every group element goes to 1.
  long long augmentation() const {
    long long s = 0;
    for (const auto& [w, c] : terms_) s += c;
    return s;
  }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  GroupRingElement& operator-=(const GroupRingElement& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend GroupRingElement operator+(GroupRingElement x, const GroupRingElement& y) { return x += y; }
  friend GroupRingElement operator-(GroupRingElement x, const GroupRingElement& y) { return x -= y; }
  GroupRingElement operator-() const {
    GroupRingElement e;
    for (const auto& [w, c] : terms_) e.add(w, -c);
    return e;
  }
  friend GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y) {
    GroupRingElement e;
    for (const auto& [u, c] : x.terms_)
      for (const auto& [v, d] : y.terms_) e.add(u * v, c * d);
    return e;
  }
  bool operator==(const GroupRingElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const GroupRingElement& o) const { return !(*this == o); }

 private:
  std::map<Word, long long> terms_;
};

// 1 + g + ... + g^{n-1}.
inline GroupRingElement norm_element(const Word& g, long long n) {
  if (n < 1) throw invalid_input("norm_element: exponent must be positive");
  GroupRingElement e;
  for (long long i = 0; i < n; ++i) e.add(pow(g, i), 1);
  return e;
}

inline std::string print_ring_element(const GroupRingElement& e, const Alphabet& a) {
  if (e.is_zero()) return "0";
  std::string s;
  for (const auto& [w, c] : e.terms()) {
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    long long m = std::llabs(c);
    if (m != 1) s += std::to_string(m) + "*";
    s += print_word(w, a);
  }
  return s;
}

// ---- fox calculus ----------------------------------------------------------
// The derivation with d(x) = 1, d(x^{-1}) = -x^{-1}, d(y) = 0 for other
// generators, extended by d(uv) = d(u) + u d(v). On a reduced word this
// collapses to a prefix sum.

inline GroupRingElement fox_derivative(const Word& w, int gen) {
  if (gen < 0) throw invalid_input("fox_derivative: negative generator");
  GroupRingElement e;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (ls[i] == gen + 1)
      e.add(Word(std::vector<Letter>(ls.begin(), ls.begin() + i)), 1);
    else if (ls[i] == -(gen + 1))
      e.add(Word(std::vector<Letter>(ls.begin(), ls.begin() + i + 1)), -1);
  }
  return e;
}

// ---- relator-set validation ------------------------------------------------

namespace detail {

inline void check_relator_set(int rank, const std::vector<Word>& relators) {
  if (rank < 1) throw invalid_input("relator set: rank must be positive");
  for (const Word& r : relators) {
    if (r.empty()) throw invalid_input("relator set: identity relator");
    if (!is_cyclically_reduced(r)) throw invalid_input("relator set: relator not cyclically reduced");
    if (max_gen_index(r) >= rank) throw invalid_input("relator set: generator out of range");
  }
  for (std::size_t i = 0; i < relators.size(); ++i)
    for (std::size_t j = i + 1; j < relators.size(); ++j)
      if (are_conjugate(relators[i], relators[j]))
        throw invalid_input("relator set: conjugate pair");
}

}  // namespace detail

// ---- torsion structure -----------------------------------------------------
// Per relator r = root^n the image of the root generates a cyclic subgroup of
// the quotient of order n. Windows are coset transversal samples certifying
// which conjugates of that subgroup are distinct.

struct TorsionEntry {
  Word relator;
  Word root;
  long long exponent = 1;
  std::string subgroup;  // "Z/n" or "trivial"
  std::vector<Word> window;
  bool window_complete = false;

  bool trivial() const { return exponent == 1; }
};

struct TorsionReport {
  int rank = 0;
  std::vector<TorsionEntry> entries;
  bool torsion_free = true;
  std::string statement;
};

inline TorsionReport torsion_decomposition(int rank, const std::vector<Word>& relators,
                                           const std::vector<WordProblemOracle>& oracles = {},
                                           int window_radius = 1) {
  detail::check_relator_set(rank, relators);
  if (!oracles.empty() && oracles.size() != 1 && oracles.size() != relators.size())
    throw invalid_input("torsion_decomposition: oracle count must be 0, 1, or one per relator");

  TorsionReport rep;
  rep.rank = rank;
  Alphabet a = Alphabet::standard(rank);
  for (std::size_t i = 0; i < relators.size(); ++i) {
    const Word& r = relators[i];
    RootData rd = root(r);
    TorsionEntry e;
    e.relator = r;
    e.root = rd.root;
    e.exponent = rd.exponent;
    e.subgroup = rd.exponent == 1 ? "trivial" : "Z/" + std::to_string(rd.exponent);
    WordProblemOracle o = oracles.empty() ? WordProblemOracle::bounded_search(3, 2)
                          : oracles.size() == 1 ? oracles[0]
                                                : oracles[i];
    Transversal t = coset_transversal(rank, r, o, window_radius);
    e.window = t.representatives;
    e.window_complete = t.complete;
    if (e.exponent != 1) rep.torsion_free = false;
    rep.entries.push_back(std::move(e));
  }

  std::ostringstream s;
  if (relators.empty()) {
    s << "no relators: the group is free of rank " << rank
      << ", torsion-free, and every torsion-free subgroup is locally indicable";
    rep.torsion_free = true;
  } else {
    s << "the normal closure of the root images is the free product of the conjugates"
         " y*C_r*y^-1 over the windows:";
    for (const TorsionEntry& e : rep.entries) {
      s << " [r=" << print_word(e.relator, a) << ", root=" << print_word(e.root, a)
        << ", C_r=" << e.subgroup << ", |Y_r window|=" << e.window.size() << "]";
    }
    if (rep.torsion_free)
      s << "; all exponents are 1, so the normal closure of the relators is free,"
           " the quotient is torsion-free, and every torsion-free subgroup of it"
           " is locally indicable";
  }
  rep.statement = s.str();
  return rep;
}

// ---- order certificates ----------------------------------------------------
// The order of a permutation image divides the order of the element in the
// quotient. When a bounded search certifies w^(image order) in the normal
// closure, the two bounds meet and the order is exact.

struct OrderCertificate {
  long long order = 1;
  bool exact = false;
  std::string method;
};

inline OrderCertificate order_certificate(const Word& w, const std::vector<Word>& relators,
                                          const std::vector<Permutation>& images,
                                          int search_factors = 4, int search_conjugator = 2) {
  if (images.empty()) throw invalid_input("order_certificate: no generator images");
  const int rank = static_cast<int>(images.size());
  for (const Permutation& p : images) validate_permutation(p);
  for (const Permutation& p : images)
    if (p.size() != images[0].size()) throw invalid_input("order_certificate: mixed degrees");
  for (const Word& r : relators) {
    if (max_gen_index(r) >= rank) throw invalid_input("order_certificate: relator generator out of range");
    if (!is_identity(permutation_image(r, images)))
      throw invalid_input("order_certificate: images violate a relator");
  }
  if (max_gen_index(w) >= rank) throw invalid_input("order_certificate: word generator out of range");

  OrderCertificate cert;
  if (w.empty()) {
    cert.order = 1;
    cert.exact = true;
    cert.method = "identity word";
    return cert;
  }
  cert.order = permutation_order(permutation_image(w, images));
  cert.exact = !relators.empty() &&
               detail::closure_search(pow(w, cert.order), relators, search_factors,
                                      search_conjugator, rank);
  cert.method = cert.exact
                    ? "image order met by a certified power relation"
                    : "image order only; divides the true order";
  return cert;
}

// ---- chain complexes -------------------------------------------------------
// Two partial resolutions for the quotient by the normal closure, in the
// one-vertex-orbit (Cayley) case. The coset complex keeps one Z[G/<root r>]
// summand per relator in degree 2; the flat complex resolves those summands
// by a free sector plus a spoke edge and a marked center vertex.

struct ModuleSummand {
  std::string label;
  Word stabilizer;               // identity for a plain free summand
  long long stabilizer_order = 1;  // cyclic order of the marked stabilizer

  bool coset_module() const { return stabilizer_order != 1; }
};

struct ChainGroup {
  std::vector<ModuleSummand> summands;
  std::size_t rank() const { return summands.size(); }
};

// boundaries[k] maps modules[k] to modules[k+1]; rows index source summands.
using RingMatrix = std::vector<std::vector<GroupRingElement>>;

struct ComplexSpec {
  std::string name;
  int ambient_rank = 0;
  std::vector<Word> relators;
  std::vector<ChainGroup> modules;    // degree 2, 1, 0
  std::vector<RingMatrix> boundaries; // d2 then d1; augmentation to Z is implicit
  std::string note;
};

struct ComplexPair {
  ComplexSpec coset;
  ComplexSpec flat;
};

inline ComplexPair build_complexes(const TreeModel& m, const std::vector<Word>& relators) {
  if (m.kind() != TreeModel::Kind::cayley)
    throw out_of_scope("build_complexes: only the one-vertex-orbit (Cayley) case is supported");
  const int rank = m.ambient_rank();
  detail::check_relator_set(rank, relators);
  const Alphabet& a = m.alphabet();
  const std::string vertex_name = m.graph().vertices[0].name;

  std::vector<RootData> roots;
  roots.reserve(relators.size());
  for (const Word& r : relators) roots.push_back(root(r));

  ComplexPair out;

  // Coset complex: one Z[G/<root>] summand per relator in degree 2.
  {
    ComplexSpec c;
    c.name = "coset";
    c.ambient_rank = rank;
    c.relators = relators;
    c.modules.resize(3);
    for (std::size_t i = 0; i < relators.size(); ++i)
      c.modules[0].summands.push_back({"relator:" + print_word(relators[i], a), roots[i].root,
                                       roots[i].exponent});
    for (int x = 0; x < rank; ++x)
      c.modules[1].summands.push_back({"edge:" + a.names[x], Word(), 1});
    c.modules[2].summands.push_back({"vertex:" + vertex_name, Word(), 1});

    RingMatrix d2(relators.size(), std::vector<GroupRingElement>(rank));
    for (std::size_t i = 0; i < relators.size(); ++i)
      for (int x = 0; x < rank; ++x) d2[i][x] = fox_derivative(relators[i], x);
    RingMatrix d1(rank, std::vector<GroupRingElement>(1));
    for (int x = 0; x < rank; ++x) {
      d1[x][0].add(Word::generator(x), 1);
      d1[x][0].add(Word(), -1);
    }
    c.boundaries = {std::move(d2), std::move(d1)};
    c.note = "degree-2 module = abelianized normal closure of the relators;"
             " summand for r is the coset module Z[G/<root r>]";
    out.coset = std::move(c);
  }

  // Flat complex: free sector per relator; proper powers get a spoke edge and
  // a marked center with stabilizer the root.
  {
    ComplexSpec c;
    c.name = "flat";
    c.ambient_rank = rank;
    c.relators = relators;
    c.modules.resize(3);
    std::vector<int> spoke_col(relators.size(), -1);
    std::vector<int> center_col(relators.size(), -1);
    for (std::size_t i = 0; i < relators.size(); ++i)
      c.modules[0].summands.push_back({"sector:" + print_word(relators[i], a), Word(), 1});
    for (int x = 0; x < rank; ++x)
      c.modules[1].summands.push_back({"edge:" + a.names[x], Word(), 1});
    c.modules[2].summands.push_back({"vertex:" + vertex_name, Word(), 1});
    for (std::size_t i = 0; i < relators.size(); ++i) {
      if (roots[i].exponent == 1) continue;
      spoke_col[i] = static_cast<int>(c.modules[1].summands.size());
      c.modules[1].summands.push_back({"spoke:" + print_word(relators[i], a), Word(), 1});
      center_col[i] = static_cast<int>(c.modules[2].summands.size());
      c.modules[2].summands.push_back({"center:" + print_word(relators[i], a), roots[i].root,
                                       roots[i].exponent});
    }

    const std::size_t c1 = c.modules[1].rank();
    const std::size_t c0 = c.modules[2].rank();
    RingMatrix d2(relators.size(), std::vector<GroupRingElement>(c1));
    for (std::size_t i = 0; i < relators.size(); ++i) {
      const Word& rho = roots[i].root;
      if (roots[i].exponent == 1) {
        for (int x = 0; x < rank; ++x) d2[i][x] = fox_derivative(relators[i], x);
      } else {
        for (int x = 0; x < rank; ++x) d2[i][x] = fox_derivative(rho, x);
        d2[i][spoke_col[i]] = GroupRingElement::one() - GroupRingElement::of(rho);
      }
    }
    RingMatrix d1(c1, std::vector<GroupRingElement>(c0));
    for (int x = 0; x < rank; ++x) {
      d1[x][0].add(Word::generator(x), 1);
      d1[x][0].add(Word(), -1);
    }
    for (std::size_t i = 0; i < relators.size(); ++i) {
      if (spoke_col[i] < 0) continue;
      d1[spoke_col[i]][0] = GroupRingElement::one();
      d1[spoke_col[i]][center_col[i]] = -GroupRingElement::one();
    }
    c.boundaries = {std::move(d2), std::move(d1)};
    c.note = "free sectors resolve the degree-2 coset modules; spokes carry the"
             " difference element 1 - root, centers carry the cyclic stabilizer";
    out.flat = std::move(c);
  }
  return out;
}

// ---- composite verification ------------------------------------------------
// Consecutive boundary composites must reduce to zero once words are compared
// in the quotient. Equality is certified term by term: exact cancellation in
// the free-group ring first, then oracle-certified merging, with coset-module
// targets compared up to right multiplication by stabilizer powers.

namespace detail {

inline bool certified_zero(const GroupRingElement& e, const std::vector<Word>& relators,
                           const WordProblemOracle& oracle, int rank, const Word& stab,
                           long long stab_order) {
  auto member = [&](const Word& t) -> bool {
    if (t.empty()) return true;
    if (oracle.kind() == WordProblemOracle::Kind::bounded_search)
      return closure_search(t, relators, oracle.max_factors(), oracle.max_conjugator(), rank);
    for (const Word& r : relators)
      if (in_normal_closure(t, r, oracle) == Verdict::yes) return true;
    return false;
  };
  auto equal_in_quotient = [&](const Word& u, const Word& v) -> bool {
    if (stab.empty()) return member(u * v.inverse());
    for (long long k = -stab_order; k <= stab_order; ++k)
      if (member(v.inverse() * u * pow(stab, -k))) return true;
    return false;
  };

  std::vector<std::pair<Word, long long>> left(e.terms().begin(), e.terms().end());
  while (!left.empty()) {
    Word rep = left.front().first;
    long long sum = left.front().second;
    left.erase(left.begin());
    for (std::size_t i = 0; i < left.size();) {
      if (equal_in_quotient(left[i].first, rep)) {
        sum += left[i].second;
        left.erase(left.begin() + i);
      } else {
        ++i;
      }
    }
    if (sum != 0) return false;
  }
  return true;
}

}  // namespace detail

inline bool composites_vanish(const ComplexSpec& c, const WordProblemOracle& oracle) {
  if (c.boundaries.size() + 1 != c.modules.size())
    throw invalid_input("composites_vanish: boundary count does not match module count");
  for (std::size_t k = 0; k + 1 < c.boundaries.size(); ++k) {
    const RingMatrix& first = c.boundaries[k];
    const RingMatrix& second = c.boundaries[k + 1];
    const ChainGroup& target = c.modules[k + 2];
    for (std::size_t i = 0; i < first.size(); ++i) {
      for (std::size_t t = 0; t < target.rank(); ++t) {
        GroupRingElement entry;
        for (std::size_t j = 0; j < second.size(); ++j) entry += first[i][j] * second[j][t];
        const ModuleSummand& ms = target.summands[t];
        if (!detail::certified_zero(entry, c.relators, oracle, c.ambient_rank, ms.stabilizer,
                                    ms.stabilizer_order))
          return false;
      }
    }
  }
  return true;
}

// ---- trivial-coefficient homology -------------------------------------------

struct AbelianGroup {
  long long free_rank = 0;
  std::vector<long long> torsion;  // invariant factors > 1, in divisibility order

  bool operator==(const AbelianGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool operator!=(const AbelianGroup& o) const { return !(*this == o); }
};

inline std::string describe(const AbelianGroup& g) {
  std::string s;
  if (g.free_rank == 1) s = "Z";
  else if (g.free_rank > 1) s = "Z^" + std::to_string(g.free_rank);
  for (long long t : g.torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + std::to_string(t);
  }
  return s.empty() ? "0" : s;
}

struct HomologySummary {
  AbelianGroup h0, h1, h2;
  std::string higher;
};

namespace detail {

inline Matrix augment_matrix(const RingMatrix& m) {
  Matrix a;
  for (const auto& row : m) {
    std::vector<long long> out;
    out.reserve(row.size());
    for (const GroupRingElement& e : row) out.push_back(e.augmentation());
    a.push_back(std::move(out));
  }
  return a;
}

inline int integer_rank(const Matrix& a) {
  if (a.empty() || a[0].empty()) return 0;
  return bareiss_rank(a);
}

inline std::vector<long long> torsion_factors(const Matrix& a) {
  if (a.empty() || a[0].empty()) return {};
  std::vector<long long> out;
  for (long long d : smith_normal_form(a).diagonal())
    if (std::llabs(d) > 1) out.push_back(std::llabs(d));
  return out;
}

}  // namespace detail

inline std::string higher_homology_statement(const ComplexSpec& c) {
  std::vector<long long> orders;
  for (const ChainGroup& g : c.modules)
    for (const ModuleSummand& s : g.summands)
      if (s.stabilizer_order > 1) orders.push_back(s.stabilizer_order);
  if (orders.empty()) return "H_n vanishes for n >= 3";
  std::string s = "for n >= 3, H_n is the direct sum of H_n of the cyclic stabilizers:";
  for (long long n : orders) s += " Z/" + std::to_string(n);
  return s;
}

// Tensor down to trivial coefficients via the augmentation and read the
// homology off Smith normal forms. The kernel of an integer matrix is a
// direct summand, so the torsion of a homology group equals the nonunit
// invariant factors of the incoming boundary.
inline HomologySummary homology_trivial_coeffs(const ComplexSpec& c) {
  if (c.modules.size() != 3 || c.boundaries.size() != 2)
    throw invalid_input("homology_trivial_coeffs: expected a three-term complex");
  Matrix a2 = detail::augment_matrix(c.boundaries[0]);
  Matrix a1 = detail::augment_matrix(c.boundaries[1]);
  const long long c2 = static_cast<long long>(c.modules[0].rank());
  const long long c1 = static_cast<long long>(c.modules[1].rank());
  const long long c0 = static_cast<long long>(c.modules[2].rank());

  if (!a2.empty() && !a1.empty()) {
    Matrix z = matrix_product(a2, a1);
    for (const auto& row : z)
      for (long long x : row)
        if (x != 0) throw invalid_state("homology_trivial_coeffs: boundaries do not compose to zero");
  }

  const int r2 = detail::integer_rank(a2);
  const int r1 = detail::integer_rank(a1);

  HomologySummary s;
  s.h2.free_rank = c2 - r2;
  s.h1.free_rank = c1 - r1 - r2;
  s.h1.torsion = detail::torsion_factors(a2);
  s.h0.free_rank = c0 - r1;
  s.h0.torsion = detail::torsion_factors(a1);
  s.higher = higher_homology_statement(c);
  return s;
}

}  // namespace clt
