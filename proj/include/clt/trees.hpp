#pragma once

#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "clt/gog_graph.hpp"
#include "clt/word.hpp"

namespace clt {

// The three tree models are all Bass-Serre trees of a graph of groups with
// trivial edge groups, so one walk engine serves every variant:
//   CayleyTree(n)         one trivial vertex group, n non-tree loops
//   FreeProductTree(p,q)  two vertex groups, one tree edge
//   GogTree(g)            as given
// Trees are never materialized; queries walk only the cells they touch.
class TreeModel {
 public:
  enum class Kind { cayley, free_product, gog };

  static TreeModel cayley(int rank) {
    if (rank < 1) throw invalid_input("CayleyTree: rank must be positive");
    GraphOfGroups g;
    g.vertices.push_back({"F", 0});
    for (int i = 0; i < rank; ++i) g.edges.push_back({0, 0, false, {}, {}});
    return TreeModel(Kind::cayley, std::move(g), Alphabet::standard(rank));
  }

  static TreeModel free_product(int rank_a, int rank_b) {
    if (rank_a < 1 || rank_b < 1) throw invalid_input("FreeProductTree: factor ranks must be positive");
    GraphOfGroups g;
    g.vertices.push_back({"A", rank_a});
    g.vertices.push_back({"B", rank_b});
    g.edges.push_back({0, 1, true, {}, {}});
    return TreeModel(Kind::free_product, std::move(g), Alphabet::standard(rank_a + rank_b));
  }

  static TreeModel gog(GraphOfGroups g) {
    g.validate();
    Alphabet a = g.alphabet();
    return TreeModel(Kind::gog, std::move(g), std::move(a));
  }

  Kind kind() const { return kind_; }
  const GraphOfGroups& graph() const { return *graph_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int ambient_rank() const { return graph_->gen_count(); }
  int num_orbits() const { return graph_->num_edges(); }

  std::string orbit_name(int orbit) const {
    if (kind_ == Kind::cayley) return alphabet_.names[orbit];
    if (kind_ == Kind::free_product) return "e";
    return "e" + std::to_string(orbit);
  }

  void check_word(const Word& w) const {
    if (max_gen_index(w) >= ambient_rank())
      throw invalid_input("word uses a generator outside the model's ambient group");
  }

  // Which quotient vertex a global generator's group sits at; -1 = stable letter.
  int vertex_of_gen(int g) const {
    if (kind_ == Kind::cayley) return -1;
    return graph_->vertex_of_gen(g);
  }

  int stable_edge_of_gen(int g) const {
    if (kind_ == Kind::cayley) return g;
    return graph_->stable_edge_of_gen(g);
  }

 private:
  TreeModel(Kind k, GraphOfGroups g, Alphabet a)
      : kind_(k), graph_(std::make_shared<const GraphOfGroups>(std::move(g))), alphabet_(std::move(a)) {}
  Kind kind_;
  std::shared_ptr<const GraphOfGroups> graph_;
  Alphabet alphabet_;
};

struct TreeVertex {
  int site = 0;  // quotient vertex
  Word coset;    // canonical representative of the vertex-group coset
  bool operator==(const TreeVertex& o) const { return site == o.site && coset == o.coset; }
  bool operator<(const TreeVertex& o) const {
    if (site != o.site) return site < o.site;
    return coset < o.coset;
  }
};

struct TreeEdge {
  Word g;         // concrete edge g * (orbit representative)
  int orbit = 0;  // quotient edge
  bool operator==(const TreeEdge& o) const { return orbit == o.orbit && g == o.g; }
  bool operator<(const TreeEdge& o) const {
    if (orbit != o.orbit) return orbit < o.orbit;
    return g < o.g;
  }
};

struct FiniteSubtree {
  std::vector<TreeEdge> edges;       // sorted, unique
  std::vector<TreeVertex> vertices;  // endpoints plus the base vertex
};

namespace detail {

struct Syllable {
  int vertex = -1;  // quotient vertex for vertex-group syllables
  int edge = -1;    // quotient edge for stable letters
  int sign = 0;
  Word part;
};

inline std::vector<Syllable> syllables(const TreeModel& m, const Word& w) {
  std::vector<Syllable> out;
  for (Letter l : w.letters()) {
    int vg = m.vertex_of_gen(gen_of(l));
    if (vg >= 0) {
      if (!out.empty() && out.back().vertex == vg)
        out.back().part = out.back().part * Word({l});
      else
        out.push_back({vg, -1, 0, Word({l})});
    } else {
      out.push_back({-1, m.stable_edge_of_gen(gen_of(l)), l > 0 ? +1 : -1, Word({l})});
    }
  }
  return out;
}

inline int entry_site(const TreeModel& m, const Syllable& s) {
  if (s.vertex >= 0) return s.vertex;
  const auto& e = m.graph().edges[s.edge];
  return s.sign > 0 ? e.from : e.to;
}

inline int exit_site(const TreeModel& m, const Syllable& s) {
  if (s.vertex >= 0) return s.vertex;
  const auto& e = m.graph().edges[s.edge];
  return s.sign > 0 ? e.to : e.from;
}

// w = u * c * u^-1 with c cyclically reduced and its syllables not wrapping
// around (first/last syllables in distinct vertex groups).
inline std::pair<Word, Word> cyclic_form(const TreeModel& m, const Word& w) {
  auto [c, u] = cyclically_reduce(w);
  for (;;) {
    auto syls = syllables(m, c);
    if (syls.size() < 2 || syls.front().vertex < 0 || syls.front().vertex != syls.back().vertex) break;
    Word p = syls.front().part;
    c = rotate(c, p.size());
    u = u * p;
  }
  return {c, u};
}

}  // namespace detail

inline bool fixes_vertex(const TreeModel& m, const Word& w) {
  m.check_word(w);
  Word c = detail::cyclic_form(m, w).first;
  if (c.empty()) return true;
  auto syls = detail::syllables(m, c);
  return syls.size() == 1 && syls[0].vertex >= 0;
}

inline int translation_length(const TreeModel& m, const Word& r) {
  if (fixes_vertex(m, r)) throw precondition_violation("translation_length: element fixes a vertex");
  auto syls = detail::syllables(m, detail::cyclic_form(m, r).first);
  int len = 0;
  for (std::size_t i = 0; i < syls.size(); ++i) {
    if (syls[i].vertex < 0) ++len;
    const auto& next = syls[(i + 1) % syls.size()];
    len += m.graph().tree_dist(detail::exit_site(m, syls[i]), detail::entry_site(m, next));
  }
  return len;
}

inline std::set<int> axis_footprint(const TreeModel& m, const Word& r) {
  if (fixes_vertex(m, r)) throw precondition_violation("axis_footprint: element fixes a vertex");
  auto syls = detail::syllables(m, detail::cyclic_form(m, r).first);
  std::set<int> orbits;
  for (std::size_t i = 0; i < syls.size(); ++i) {
    if (syls[i].vertex < 0) orbits.insert(syls[i].edge);
    const auto& next = syls[(i + 1) % syls.size()];
    for (auto [e, fwd] : m.graph().tree_path(detail::exit_site(m, syls[i]), detail::entry_site(m, next)))
      orbits.insert(e);
  }
  return orbits;
}

inline std::vector<std::string> orbit_names(const TreeModel& m, const std::set<int>& orbits) {
  std::vector<std::string> out;
  for (int o : orbits) out.push_back(m.orbit_name(o));
  return out;
}

namespace detail {

inline Word coset_rep(const TreeModel& m, int site, const Word& g) {
  const auto& ls = g.letters();
  std::size_t n = ls.size();
  while (n > 0 && m.vertex_of_gen(gen_of(ls[n - 1])) == site) --n;
  return Word(std::vector<Letter>(ls.begin(), ls.begin() + n));
}

// Walks w syllable by syllable, emitting the concrete tree edges crossed.
// loc_begin = loc_end = base gives geodesics from the base vertex; the axis
// period walk instead starts and closes at the first syllable's site.
inline std::vector<TreeEdge> walk_edges(const TreeModel& m, const Word& w, int loc_begin, int loc_end) {
  std::vector<TreeEdge> out;
  Word cur;
  int loc = loc_begin;
  // Edge stabilizers are trivial, so the concrete edge is the exact group
  // element at crossing time, not a coset.
  auto walk_tree = [&](int a, int b) {
    for (const auto& step : m.graph().tree_path(a, b)) out.push_back({cur, step.first});
  };
  for (const auto& s : syllables(m, w)) {
    walk_tree(loc, entry_site(m, s));
    loc = entry_site(m, s);
    if (s.vertex >= 0) {
      cur = cur * s.part;
    } else if (s.sign > 0) {
      out.push_back({cur, s.edge});
      cur = cur * s.part;
      loc = m.graph().edges[s.edge].to;
    } else {
      cur = cur * s.part;
      out.push_back({cur, s.edge});
      loc = m.graph().edges[s.edge].from;
    }
  }
  walk_tree(loc, loc_end);
  return out;
}

}  // namespace detail

inline TreeVertex base_vertex(const TreeModel&) { return TreeVertex{0, Word()}; }

inline std::pair<TreeVertex, TreeVertex> edge_endpoints(const TreeModel& m, const TreeEdge& e) {
  const auto& ge = m.graph().edges[e.orbit];
  TreeVertex from{ge.from, detail::coset_rep(m, ge.from, e.g)};
  Word to_g = ge.in_tree ? e.g : e.g * Word::generator(m.graph().gen_of_stable_edge(e.orbit));
  TreeVertex to{ge.to, detail::coset_rep(m, ge.to, to_g)};
  return {from, to};
}

inline std::vector<TreeEdge> geodesic_from_base(const TreeModel& m, const Word& g) {
  m.check_word(g);
  return detail::walk_edges(m, g, 0, 0);
}

inline FiniteSubtree spanned_subtree(const TreeModel& m, const std::vector<Word>& elements) {
  FiniteSubtree y;
  for (const Word& g : elements) {
    auto path = geodesic_from_base(m, g);
    y.edges.insert(y.edges.end(), path.begin(), path.end());
  }
  std::sort(y.edges.begin(), y.edges.end());
  y.edges.erase(std::unique(y.edges.begin(), y.edges.end()), y.edges.end());
  std::set<TreeVertex> vs;
  vs.insert(base_vertex(m));
  for (const auto& e : y.edges) {
    auto [a, b] = edge_endpoints(m, e);
    vs.insert(a);
    vs.insert(b);
  }
  y.vertices.assign(vs.begin(), vs.end());
  return y;
}

enum class GlueMode { edges, vertices };

// All f with f*part meeting part, over the chosen cells. The edge action is
// free, so in edge mode the set {g' g^-1} is exactly the glue set; in vertex
// mode the same formula yields one representative per meeting translate.
inline std::vector<Word> glue_set(const TreeModel& m, const FiniteSubtree& part, GlueMode mode) {
  std::set<Word> out;
  if (mode == GlueMode::edges) {
    if (part.edges.empty()) throw degenerate_input("glue_set: part has no edges");
    for (const auto& e1 : part.edges)
      for (const auto& e2 : part.edges)
        if (e1.orbit == e2.orbit) out.insert(e2.g * e1.g.inverse());
  } else {
    if (part.vertices.empty()) throw degenerate_input("glue_set: part has no vertices");
    for (const auto& v1 : part.vertices)
      for (const auto& v2 : part.vertices)
        if (v1.site == v2.site) out.insert(v2.coset * v1.coset.inverse());
  }
  return std::vector<Word>(out.begin(), out.end());
}

inline FiniteSubtree axis_segment(const TreeModel& m, const Word& r, int window) {
  if (fixes_vertex(m, r)) throw precondition_violation("axis_segment: element fixes a vertex");
  auto [c, u] = detail::cyclic_form(m, r);
  int first_site = detail::entry_site(m, detail::syllables(m, c).front());
  std::vector<TreeEdge> period = detail::walk_edges(m, c, first_site, first_site);
  FiniteSubtree seg;
  int lo = -(window / 2), hi = window - window / 2;
  for (int k = lo; k < hi; ++k) {
    Word shift = u * pow(c, k);
    for (const auto& e : period) seg.edges.push_back({shift * e.g, e.orbit});
  }
  std::sort(seg.edges.begin(), seg.edges.end());
  seg.edges.erase(std::unique(seg.edges.begin(), seg.edges.end()), seg.edges.end());
  std::set<TreeVertex> vs;
  for (const auto& e : seg.edges) {
    auto [a, b] = edge_endpoints(m, e);
    vs.insert(a);
    vs.insert(b);
  }
  if (seg.edges.empty()) vs.insert(base_vertex(m));
  seg.vertices.assign(vs.begin(), vs.end());
  return seg;
}

inline std::string vertex_label(const TreeModel& m, const TreeVertex& v) {
  std::string site = m.graph().vertices[v.site].name;
  return site + ":" + print_word(v.coset, m.alphabet());
}

inline std::string to_dot(const TreeModel& m, const FiniteSubtree& t) {
  std::ostringstream os;
  os << "graph subtree {\n";
  for (const auto& v : t.vertices) os << "  \"" << vertex_label(m, v) << "\";\n";
  for (const auto& e : t.edges) {
    auto [a, b] = edge_endpoints(m, e);
    os << "  \"" << vertex_label(m, a) << "\" -- \"" << vertex_label(m, b) << "\" [label=\""
       << m.orbit_name(e.orbit) << ":" << print_word(e.g, m.alphabet()) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string to_dot_quotient(const TreeModel& m) {
  std::ostringstream os;
  os << "graph quotient {\n";
  for (const auto& v : m.graph().vertices) os << "  \"" << v.name << "\" [label=\"" << v.name << " (rank " << v.rank << ")\"];\n";
  for (int e = 0; e < m.graph().num_edges(); ++e) {
    const auto& ge = m.graph().edges[e];
    os << "  \"" << m.graph().vertices[ge.from].name << "\" -- \"" << m.graph().vertices[ge.to].name
       << "\" [label=\"" << m.orbit_name(e) << "\"" << (ge.in_tree ? ", style=bold" : "") << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace clt
