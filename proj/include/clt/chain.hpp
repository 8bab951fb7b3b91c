#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "clt/error.hpp"
#include "clt/smith.hpp"
#include "clt/stallings.hpp"
#include "clt/trees.hpp"
#include "clt/word.hpp"

namespace clt {

// A subgroup of the ambient free group, in one of three shapes: the whole
// group, a folded graph, or the kernel of a homomorphism to Z given on the
// basis of a folded parent. Kernels support membership only; they are never
// converted to generating sets.
class SubgroupHandle {
 public:
  enum class Kind { full_group, folded, kernel };

  static SubgroupHandle full(int ambient_rank) {
    if (ambient_rank < 0) throw invalid_input("SubgroupHandle: negative rank");
    SubgroupHandle h;
    h.kind_ = Kind::full_group;
    h.ambient_rank_ = ambient_rank;
    return h;
  }
  static SubgroupHandle folded(SubgroupGraph g, int ambient_rank) {
    SubgroupHandle h;
    h.kind_ = Kind::folded;
    h.ambient_rank_ = ambient_rank;
    h.graph_ = std::move(g);
    return h;
  }
  static SubgroupHandle kernel(SubgroupGraph parent, std::vector<long long> hom,
                               int ambient_rank) {
    if (static_cast<int>(hom.size()) != graph_rank(parent))
      throw invalid_input("SubgroupHandle: hom length != parent rank");
    long long g = 0;
    for (long long x : hom) g = std::gcd(g, x);
    if (g != 1)
      throw invalid_input("SubgroupHandle: hom must be primitive (gcd 1)");
    SubgroupHandle h;
    h.kind_ = Kind::kernel;
    h.ambient_rank_ = ambient_rank;
    h.graph_ = std::move(parent);
    h.hom_ = std::move(hom);
    return h;
  }

  Kind kind() const { return kind_; }
  int ambient_rank() const { return ambient_rank_; }
  const SubgroupGraph& graph() const {
    if (kind_ == Kind::full_group)
      throw invalid_state("SubgroupHandle: full group has no graph");
    return graph_;
  }
  const std::vector<long long>& hom() const {
    if (kind_ != Kind::kernel)
      throw invalid_state("SubgroupHandle: not a kernel");
    return hom_;
  }

  bool contains(const Word& w) const {
    if (max_gen_index(w) >= ambient_rank_) return false;
    switch (kind_) {
      case Kind::full_group:
        return true;
      case Kind::folded:
        return is_member(w, graph_).has_value();
      case Kind::kernel: {
        auto expr = is_member(w, graph_);
        if (!expr) return false;
        long long total = 0;
        for (const auto& [idx, sign] : expr->factors)
          total += sign * hom_[idx];
        return total == 0;
      }
    }
    return false;
  }

 private:
  Kind kind_ = Kind::full_group;
  int ambient_rank_ = 0;
  SubgroupGraph graph_;
  std::vector<long long> hom_;
};

// Decides whether <gens> / <<S>> maps onto Z, and if so returns a witness
// homomorphism as a primitive integer vector on the folded basis of <gens>.
// Every s must lie in <gens>.
struct CyclicQuotientResult {
  bool has_quotient = false;
  std::vector<long long> witness;  // on the basis of `folded`, when found
  SubgroupGraph folded;
  Matrix relator_matrix;  // abelianized S over that basis
};

inline CyclicQuotientResult has_infinite_cyclic_quotient(
    const std::vector<Word>& gens, const std::vector<Word>& S) {
  CyclicQuotientResult res;
  res.folded = build_and_fold(gens);
  int b = graph_rank(res.folded);
  for (const Word& s : S) {
    auto expr = is_member(s, res.folded);
    if (!expr)
      throw precondition_violation(
          "has_infinite_cyclic_quotient: relator outside <gens>");
    std::vector<long long> row(b, 0);
    for (const auto& [idx, sign] : expr->factors) row[idx] += sign;
    res.relator_matrix.push_back(std::move(row));
  }
  if (b == 0) return res;
  if (res.relator_matrix.empty()) {
    res.has_quotient = true;
    res.witness.assign(b, 0);
    res.witness[0] = 1;
    return res;
  }
  auto snf = smith_normal_form(res.relator_matrix);
  int r = snf.rank();
  if (r < b) {
    res.has_quotient = true;
    res.witness.resize(b);
    for (int i = 0; i < b; ++i) res.witness[i] = snf.v[i][r];
  }
  return res;
}

// The dagger of a handle: the subgroup generated by the members of S_plus
// the handle contains.
inline SubgroupHandle dagger(const SubgroupHandle& h,
                             const std::vector<Word>& S_plus) {
  std::vector<Word> kept;
  for (const Word& w : S_plus)
    if (h.contains(w)) kept.push_back(w);
  return SubgroupHandle::folded(build_and_fold(kept), h.ambient_rank());
}

// One step of the chain: the subgroup reached, whether it equals the span of
// the surviving generating set (the dagger), and the witness hom otherwise.
struct ChainStep {
  SubgroupHandle handle;
  bool chose_dagger = false;
  std::vector<long long> hom;      // on the dagger basis, kernel steps only
  std::vector<Word> survivors;     // S_plus members of the previous subgroup
  int dagger_rank = 0;
};

struct ChainReport {
  std::vector<Word> S, Phi;
  FiniteSubtree Y;
  std::vector<Word> glue;    // glue set of Y with the identity dropped
  std::vector<Word> S_plus;  // S,Phi,glue deduped, order of first appearance
  int nu = 0;
  std::vector<ChainStep> steps;  // steps[n].handle is F_{n+1}
  SubgroupHandle bottom;         // F_nu, always folded

  int bottom_rank() const { return graph_rank(bottom.graph()); }
};

namespace detail {

inline std::vector<Word> dedupe_words(const std::vector<Word>& in) {
  std::vector<Word> out;
  for (const Word& w : in)
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  return out;
}

}  // namespace detail

// Runs the descending chain of Setting 3.1 on a Cayley-tree model:
// F_0 = F, and F_{n+1} is the dagger <S_plus cap F_n> when that subgroup's
// quotient by <<S>> has no infinite cyclic quotient, else the kernel of a
// witness hom to Z on the dagger. Stabilizes by step nu = |S_plus| + 1.
inline ChainReport build_chain(const TreeModel& model,
                               const std::vector<Word>& S_in,
                               const std::vector<Word>& Phi_in) {
  if (model.kind() != TreeModel::Kind::cayley)
    throw out_of_scope("build_chain: only Cayley-tree models are supported");
  ChainReport rep;
  rep.S = detail::dedupe_words(S_in);
  rep.Phi = detail::dedupe_words(Phi_in);
  for (const Word& w : rep.S) model.check_word(w);
  for (const Word& w : rep.Phi) model.check_word(w);

  std::vector<Word> generators = rep.S;
  for (const Word& w : rep.Phi) generators.push_back(w);
  generators = detail::dedupe_words(generators);

  auto hyp = has_infinite_cyclic_quotient(generators, rep.S);
  if (hyp.has_quotient)
    throw precondition_violation(
        "build_chain: <S,Phi>/<<S>> has an infinite cyclic quotient");

  rep.Y = spanned_subtree(model, generators);
  if (!rep.Y.edges.empty()) {
    for (const Word& g : glue_set(model, rep.Y, GlueMode::edges))
      if (!g.empty()) rep.glue.push_back(g);
  }

  rep.S_plus = generators;
  for (const Word& g : rep.glue) rep.S_plus.push_back(g);
  rep.S_plus = detail::dedupe_words(rep.S_plus);
  rep.nu = static_cast<int>(rep.S_plus.size()) + 1;

  int rank = model.ambient_rank();
  SubgroupHandle current = SubgroupHandle::full(rank);
  int shrink_count = 0;
  std::size_t prev_survivors = rep.S_plus.size() + 1;

  for (int n = 0; n < rep.nu; ++n) {
    ChainStep step;
    for (const Word& w : rep.S_plus)
      if (current.contains(w)) step.survivors.push_back(w);
    for (const Word& w : generators)
      if (!current.contains(w))
        throw invalid_state("build_chain: S or Phi escaped the chain");

    if (step.survivors.size() < prev_survivors) ++shrink_count;
    prev_survivors = step.survivors.size();

    SubgroupGraph spanned = build_and_fold(step.survivors);
    step.dagger_rank = graph_rank(spanned);
    auto q = has_infinite_cyclic_quotient(step.survivors, rep.S);
    if (!q.has_quotient) {
      step.chose_dagger = true;
      step.handle = SubgroupHandle::folded(std::move(spanned), rank);
    } else {
      step.hom = q.witness;
      step.handle = SubgroupHandle::kernel(std::move(spanned), q.witness, rank);
    }
    current = step.handle;
    rep.steps.push_back(std::move(step));
  }

  if (shrink_count > static_cast<int>(rep.S_plus.size()) + 1)
    throw invalid_state("build_chain: too many strict shrinks");
  if (rep.steps.back().handle.kind() != SubgroupHandle::Kind::folded)
    throw invalid_state("build_chain: chain did not stabilize on a fold");
  rep.bottom = rep.steps.back().handle;

  std::vector<Word> bottom_survivors;
  for (const Word& w : rep.S_plus)
    if (rep.bottom.contains(w)) bottom_survivors.push_back(w);
  if (!(build_and_fold(bottom_survivors) == rep.bottom.graph()))
    throw invalid_state("build_chain: bottom is not spanned by its survivors");
  return rep;
}

// Checks the Whitehead-subset conclusion at the bottom of a chain: S, deduped
// by F_nu-conjugacy, should be a free basis of the subgroup it generates, and
// that subgroup should be all of F_nu. When direct generation fails, conjugate
// extensions up to the given ball radius over the bottom basis are tried.
struct BottomVerdict {
  std::vector<Word> transversal;  // one member per F_nu-conjugacy class of S
  bool basis_certified = false;
  bool generates = false;
  bool generates_with_conjugates = false;
  int bound_used = 0;
  std::string note;

  bool fully_verified() const {
    return basis_certified && (generates || generates_with_conjugates);
  }
};

inline BottomVerdict verify_bottom(const ChainReport& rep, int bound = 2) {
  BottomVerdict v;
  const SubgroupGraph& bg = rep.bottom.graph();
  const auto& basis = bg.basis_words();
  int br = graph_rank(bg);

  auto over_basis = [&](const Word& w) {
    auto expr = is_member(w, bg);
    if (!expr) throw invalid_state("verify_bottom: S escaped the bottom");
    std::vector<Letter> letters;
    for (const auto& [idx, sign] : expr->factors)
      letters.push_back(sign > 0 ? Letter(idx + 1) : Letter(-(idx + 1)));
    return Word(std::move(letters));
  };

  std::vector<Word> reduced_classes;
  for (const Word& s : rep.S) {
    if (s.empty()) {
      v.note = "identity relators ignored; ";
      continue;
    }
    Word sb = over_basis(s);
    bool seen = false;
    for (const Word& c : reduced_classes)
      if (are_conjugate(sb, c)) {
        seen = true;
        break;
      }
    if (!seen) {
      reduced_classes.push_back(sb);
      v.transversal.push_back(s);
    }
  }

  v.basis_certified =
      v.transversal.empty() ? true : is_free_basis(v.transversal);
  v.generates = v.transversal.empty()
                    ? br == 0
                    : build_and_fold(v.transversal) == bg;

  if (!v.generates && !v.transversal.empty() && br > 0) {
    auto embed = [&](const Word& w) {  // basis word -> ambient word
      Word out;
      for (Letter l : w.letters()) {
        const Word& b = basis[gen_of(l)];
        out = out * (l > 0 ? b : b.inverse());
      }
      return out;
    };
    std::vector<Word> extended;
    for (const Word& c : enumerate_ball(br, bound)) {
      Word amb = embed(c);
      for (const Word& t : v.transversal)
        extended.push_back(conjugate(amb, t));
    }
    v.generates_with_conjugates = build_and_fold(extended) == bg;
    v.bound_used = bound;
  }

  v.note += "action on the tree is free: vertex stabilizers are trivial";
  return v;
}

}  // namespace clt
