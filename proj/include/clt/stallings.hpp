#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "clt/word.hpp"

namespace clt {

struct BasisExpression {
  std::vector<std::pair<int, int>> factors;  // (basis index, sign)
  bool operator==(const BasisExpression& o) const { return factors == o.factors; }
};

// Folded subgroup graph (core graph) with base vertex 0. Vertices are numbered
// by BFS discovery order, so equal subgroup/generator data yields an identical
// object regardless of fold order.
class SubgroupGraph {
 public:
  int rank() const { return rank_; }
  bool folded() const { return folded_; }
  int num_vertices() const { return static_cast<int>(out_.size()); }
  int num_edges() const {
    int n = 0;
    for (const auto& row : out_)
      for (int t : row) n += (t >= 0);
    return n;
  }

  // Edge triples (source, generator, target), sorted.
  std::vector<std::tuple<int, int, int>> edges() const {
    std::vector<std::tuple<int, int, int>> es;
    for (int v = 0; v < num_vertices(); ++v)
      for (int g = 0; g < rank_; ++g)
        if (out_[v][g] >= 0) es.emplace_back(v, g, out_[v][g]);
    return es;
  }

  bool operator==(const SubgroupGraph& o) const {
    return rank_ == o.rank_ && folded_ == o.folded_ && out_ == o.out_;
  }

  int trace(int from, Letter l) const {
    int g = gen_of(l);
    if (g >= rank_) return -1;
    return l > 0 ? out_[from][g] : in_[from][g];
  }

  const std::vector<Word>& basis_words() const { return basis_words_; }

  friend SubgroupGraph build_and_fold(const std::vector<Word>& generators);
  friend class GraphBuilder;

 private:
  int rank_ = 0;
  bool folded_ = false;
  std::vector<std::vector<int>> out_, in_;  // [vertex][gen] -> vertex or -1
  // Spanning tree and basis data (folded graphs only).
  std::vector<Word> path_to_;                       // base-to-vertex tree word
  std::map<std::pair<int, int>, int> basis_index_;  // (src, gen) of non-tree edge
  std::vector<Word> basis_words_;

  void index_basis() {
    path_to_.assign(num_vertices(), Word());
    std::vector<bool> seen(num_vertices(), false);
    std::map<std::pair<int, int>, bool> in_tree;
    std::queue<int> q;
    seen[0] = true;
    q.push(0);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int g = 0; g < rank_; ++g) {
        if (int t = out_[v][g]; t >= 0 && !seen[t]) {
          seen[t] = true;
          in_tree[{v, g}] = true;
          path_to_[t] = path_to_[v] * Word::generator(g);
          q.push(t);
        }
        if (int s = in_[v][g]; s >= 0 && !seen[s]) {
          seen[s] = true;
          in_tree[{s, g}] = true;
          path_to_[s] = path_to_[v] * Word::generator(g, -1);
          q.push(s);
        }
      }
    }
    for (int v = 0; v < num_vertices(); ++v)
      for (int g = 0; g < rank_; ++g)
        if (out_[v][g] >= 0 && !in_tree[{v, g}]) {
          int idx = static_cast<int>(basis_words_.size());
          basis_index_[{v, g}] = idx;
          basis_words_.push_back(path_to_[v] * Word::generator(g) * path_to_[out_[v][g]].inverse());
        }
  }

  friend int graph_rank(const SubgroupGraph& g);
  friend std::optional<BasisExpression> is_member(const Word& w, const SubgroupGraph& g);
};

// Mutable pre-fold graph; used by build_and_fold and by tests that need an
// unfolded value to poke at.
class GraphBuilder {
 public:
  void add_loop(const Word& w) {
    rank_ = std::max(rank_, max_gen_index(w) + 1);
    if (w.empty()) return;
    int cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int nxt = (i + 1 == w.size()) ? 0 : fresh();
      Letter l = w[i];
      if (l > 0)
        edges_.emplace_back(cur, gen_of(l), nxt);
      else
        edges_.emplace_back(nxt, gen_of(l), cur);
      cur = nxt;
    }
  }

  SubgroupGraph build_unfolded() const {
    SubgroupGraph g;
    g.rank_ = rank_;
    g.folded_ = false;
    g.out_.assign(n_, std::vector<int>(rank_, -1));
    g.in_.assign(n_, std::vector<int>(rank_, -1));
    for (auto [s, gen, t] : edges_) {  // later edges win; only for error probes
      g.out_[s][gen] = t;
      g.in_[t][gen] = s;
    }
    return g;
  }

  SubgroupGraph fold() {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a == b) return false;
      if (b == 0) std::swap(a, b);  // keep base as class representative
      parent[b] = a;
      return true;
    };

    bool changed = true;
    std::vector<std::tuple<int, int, int>> es = edges_;
    while (changed) {
      changed = false;
      for (auto& [s, g, t] : es) {
        s = find(s);
        t = find(t);
      }
      std::sort(es.begin(), es.end());
      es.erase(std::unique(es.begin(), es.end()), es.end());
      std::map<std::pair<int, int>, int> out_seen, in_seen;
      for (auto [s, g, t] : es) {
        if (auto it = out_seen.find({s, g}); it != out_seen.end()) {
          if (unite(t, it->second)) changed = true;
        } else {
          out_seen[{s, g}] = t;
        }
        if (auto it = in_seen.find({t, g}); it != in_seen.end()) {
          if (unite(s, it->second)) changed = true;
        } else {
          in_seen[{t, g}] = s;
        }
      }
    }

    // Prune non-base vertices of degree 1 (hair from non-cyclically-reduced
    // generators), repeating until stable.
    std::map<int, int> deg;
    for (auto [s, g, t] : es) {
      ++deg[s];
      ++deg[t];
    }
    bool pruned = true;
    std::vector<bool> dead(n_, false);
    while (pruned) {
      pruned = false;
      for (auto& [s, g, t] : es) {
        if (s < 0) continue;
        for (int v : {s, t}) {
          if (v != 0 && !dead[v] && deg[v] == 1) {
            dead[v] = true;
            --deg[s];
            --deg[t];
            s = -1;  // tombstone this edge
            pruned = true;
            break;
          }
        }
      }
    }
    es.erase(std::remove_if(es.begin(), es.end(), [](const auto& e) { return std::get<0>(e) < 0; }),
             es.end());

    // BFS renumber from base; neighbor order: gen ascending, out before in.
    std::map<int, std::map<int, int>> out_adj, in_adj;
    for (auto [s, g, t] : es) {
      out_adj[s][g] = t;
      in_adj[t][g] = s;
    }
    std::map<int, int> id;
    id[find(0)] = 0;
    std::queue<int> q;
    q.push(find(0));
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int g = 0; g < rank_; ++g) {
        for (auto* adj : {&out_adj, &in_adj}) {
          auto it = adj->find(v);
          if (it == adj->end()) continue;
          auto jt = it->second.find(g);
          if (jt == it->second.end()) continue;
          int w = jt->second;
          if (!id.count(w)) {
            id[w] = static_cast<int>(id.size());
            q.push(w);
          }
        }
      }
    }

    SubgroupGraph g;
    g.rank_ = rank_;
    g.folded_ = true;
    int n = static_cast<int>(id.size());
    g.out_.assign(n, std::vector<int>(rank_, -1));
    g.in_.assign(n, std::vector<int>(rank_, -1));
    for (auto [s, gen, t] : es) {
      g.out_[id[s]][gen] = id[t];
      g.in_[id[t]][gen] = id[s];
    }
    g.index_basis();
    return g;
  }

 private:
  int fresh() { return n_++; }
  int n_ = 1;  // vertex 0 is the base
  int rank_ = 0;
  std::vector<std::tuple<int, int, int>> edges_;  // (src, gen, dst), dst = src.gen
};

inline SubgroupGraph build_and_fold(const std::vector<Word>& generators) {
  GraphBuilder b;
  for (const Word& w : generators) b.add_loop(w);
  return b.fold();
}

inline int graph_rank(const SubgroupGraph& g) {
  if (!g.folded()) throw invalid_state("graph_rank: graph is not folded");
  return g.num_edges() - g.num_vertices() + 1;
}

inline std::optional<BasisExpression> is_member(const Word& w, const SubgroupGraph& g) {
  if (!g.folded()) throw invalid_state("is_member: graph is not folded");
  BasisExpression expr;
  int cur = 0;
  for (Letter l : w.letters()) {
    int nxt = g.trace(cur, l);
    if (nxt < 0) return std::nullopt;
    std::pair<int, int> key = l > 0 ? std::make_pair(cur, gen_of(l)) : std::make_pair(nxt, gen_of(l));
    auto it = g.basis_index_.find(key);
    if (it != g.basis_index_.end()) expr.factors.emplace_back(it->second, l > 0 ? +1 : -1);
    cur = nxt;
  }
  if (cur != 0) return std::nullopt;
  return expr;
}

inline Word evaluate_expression(const SubgroupGraph& g, const BasisExpression& e) {
  Word w;
  for (auto [i, s] : e.factors) w = w * (s > 0 ? g.basis_words()[i] : g.basis_words()[i].inverse());
  return w;
}

// Exponent vector of w over the graph basis, via the rewritten expression.
inline std::vector<long long> abelianized_over_basis(const SubgroupGraph& g, const Word& w) {
  auto e = is_member(w, g);
  if (!e) throw precondition_violation("abelianized_over_basis: word is not in the subgroup");
  std::vector<long long> v(g.basis_words().size(), 0);
  for (auto [i, s] : e->factors) v[i] += s;
  return v;
}

inline bool is_free_basis(const std::vector<Word>& candidates) {
  if (candidates.empty()) throw invalid_input("is_free_basis: empty candidate set");
  std::vector<Word> set = candidates;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  for (const Word& w : set)
    if (w.empty()) throw invalid_input("is_free_basis: identity among candidates");
  return graph_rank(build_and_fold(set)) == static_cast<int>(set.size());
}

inline std::string to_dot(const SubgroupGraph& g, const Alphabet& a) {
  std::ostringstream os;
  os << "digraph stallings {\n  rankdir=LR;\n";
  for (int v = 0; v < g.num_vertices(); ++v)
    os << "  " << v << " [shape=" << (v == 0 ? "doublecircle" : "circle") << "];\n";
  for (auto [s, gen, t] : g.edges())
    os << "  " << s << " -> " << t << " [label=\"" << a.names[gen] << "\"];\n";
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const SubgroupGraph& g) { return to_dot(g, Alphabet::standard(std::max(g.rank(), 1))); }

}  // namespace clt
