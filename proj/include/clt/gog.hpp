// Graph-of-groups layer: fundamental presentations, free-product normal
// forms, relator-family hypothesis checks, the staggered-to-line
// decomposition, and Freiheitssatz probes. Serialization lives here too.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "clt/asphericity.hpp"
#include "clt/error.hpp"
#include "clt/gog_graph.hpp"
#include "clt/stagger.hpp"
#include "clt/trees.hpp"
#include "clt/word.hpp"

namespace clt {

// ---- fundamental presentation -----------------------------------------------

struct FundamentalPresentation {
  int rank = 0;
  int stable_count = 0;
  std::vector<std::string> generators;
  Alphabet alphabet = Alphabet::standard(1);
};

// Trivial edge groups make the fundamental group a free product of the
// vertex groups and one Z per non-tree edge, hence free of the stated rank.
inline FundamentalPresentation fundamental_presentation(const GraphOfGroups& g) {
  g.validate();
  FundamentalPresentation p;
  p.rank = g.gen_count();
  p.stable_count = static_cast<int>(g.stable_edges().size());
  p.alphabet = g.alphabet();
  p.generators = p.alphabet.names;
  return p;
}

// ---- normal form --------------------------------------------------------------

struct GogSyllable {
  int vertex = -1;  // vertex-group syllables carry the quotient vertex
  int edge = -1;    // stable letters carry their edge and sign
  int sign = 0;
  Word part;
};

// Free-product normal form over (vertex groups) * (stable letters): maximal
// same-vertex runs of the reduced word, empty exactly for the identity.
inline std::vector<GogSyllable> normal_form(const GraphOfGroups& g, const Word& w) {
  g.validate();
  if (max_gen_index(w) >= g.gen_count())
    throw invalid_input("normal_form: word uses a generator outside the presentation");
  std::vector<GogSyllable> out;
  for (Letter l : w.letters()) {
    int v = g.vertex_of_gen(gen_of(l));
    if (v >= 0) {
      if (!out.empty() && out.back().vertex == v)
        out.back().part = out.back().part * Word({l});
      else
        out.push_back({v, -1, 0, Word({l})});
    } else {
      out.push_back({-1, g.stable_edge_of_gen(gen_of(l)), l > 0 ? +1 : -1, Word({l})});
    }
  }
  return out;
}

// Syllable count after cyclic normalization; the translation-length input.
inline int cyclic_syllable_length(const GraphOfGroups& g, const Word& w) {
  auto [c, u] = cyclically_reduce(w);
  auto syls = normal_form(g, c);
  while (syls.size() >= 2 && syls.front().vertex >= 0 &&
         syls.front().vertex == syls.back().vertex) {
    c = rotate(c, syls.front().part.size());
    syls = normal_form(g, c);
  }
  return static_cast<int>(syls.size());
}

// ---- relator family hypothesis check ----------------------------------------------

struct RelatorFamilyItem {
  int vertex = -1;
  int edge = -1;
  bool at_from = true;
  std::vector<int> factor;  // local generator indices of the marked factor
  bool pass = false;
  Word witness;  // cyclic reduction of the relator, global letters
};

struct RelatorFamilyReport {
  std::vector<RelatorFamilyItem> items;
  bool all_pass = true;
};

// A conjugate of r_v lies in a basis-subset factor exactly when the cyclic
// reduction of r_v uses only that factor's generators.
inline RelatorFamilyReport check_relator_family(const GraphOfGroups& g,
                                                const std::map<int, Word>& family) {
  g.validate();
  RelatorFamilyReport rep;
  for (const auto& [v, r] : family) {
    if (v < 0 || v >= g.num_vertices()) throw invalid_input("relator family: bad vertex index");
    if (r.empty()) throw invalid_input("relator family: identity relator");
    int off = g.vertex_gen_offset(v);
    int rk = g.vertices[v].rank;
    for (Letter l : r.letters())
      if (gen_of(l) < off || gen_of(l) >= off + rk)
        throw invalid_input("relator family: relator uses foreign generators");
    Word cyc = cyclically_reduce(r).first;
    std::set<int> support;  // local indices
    for (Letter l : cyc.letters()) support.insert(gen_of(l) - off);
    for (int e = 0; e < g.num_edges(); ++e) {
      for (bool at_from : {true, false}) {
        int end = at_from ? g.edges[e].from : g.edges[e].to;
        if (end != v) continue;
        const auto& factor = at_from ? g.edges[e].factor_from : g.edges[e].factor_to;
        std::set<int> fs(factor.begin(), factor.end());
        bool inside = std::all_of(support.begin(), support.end(),
                                  [&](int s) { return fs.count(s) > 0; });
        RelatorFamilyItem item;
        item.vertex = v;
        item.edge = e;
        item.at_from = at_from;
        item.factor = factor;
        item.pass = !inside;
        item.witness = cyc;
        rep.all_pass = rep.all_pass && item.pass;
        rep.items.push_back(std::move(item));
      }
    }
  }
  return rep;
}

// ---- staggered family to line of groups --------------------------------------------

struct LineInterval {
  int lo = 0, hi = 0;  // 1-based positions in the staggering order
  Word representative;
  std::vector<int> orbit_ids;  // orbits at positions lo..hi, in order
};

struct LineEdge {
  int left = 0, right = 0;  // interval indices
  int lo = 0, hi = 0;       // overlap positions; lo > hi means trivial edge group
  bool trivial() const { return lo > hi; }
};

struct LineDecomposition {
  std::vector<LineInterval> intervals;
  std::vector<LineEdge> edges;
};

// The strongly staggered family rearranged over the real line: one vertex
// group per relator class spanning positions [mu_n, nu_n]; consecutive
// overlaps are the edge groups.
inline LineDecomposition staggered_to_line(const TreeModel& m, const std::vector<Word>& R,
                                           const Staggering& ord) {
  StaggerReport rep = check_strongly_staggered(m, R, ord);
  if (!rep.strongly_staggered())
    throw precondition_violation("staggered_to_line: family is not strongly staggered");
  std::vector<int> pos_of_orbit(m.num_orbits(), 0);
  for (int i = 0; i < static_cast<int>(rep.effective.ordering.size()); ++i)
    pos_of_orbit[rep.effective.ordering[i]] = i + 1;
  LineDecomposition line;
  for (const auto& c : rep.classes) {
    LineInterval iv;
    iv.representative = c.representative;
    iv.lo = iv.hi = pos_of_orbit[*c.footprint.begin()];
    for (int o : c.footprint) {
      iv.lo = std::min(iv.lo, pos_of_orbit[o]);
      iv.hi = std::max(iv.hi, pos_of_orbit[o]);
    }
    for (int p = iv.lo; p <= iv.hi; ++p) iv.orbit_ids.push_back(rep.effective.ordering[p - 1]);
    line.intervals.push_back(std::move(iv));
  }
  std::sort(line.intervals.begin(), line.intervals.end(),
            [](const LineInterval& a, const LineInterval& b) { return a.lo < b.lo; });
  for (std::size_t n = 0; n + 1 < line.intervals.size(); ++n) {
    if (line.intervals[n].lo >= line.intervals[n + 1].lo ||
        line.intervals[n].hi >= line.intervals[n + 1].hi)
      throw invalid_state("staggered_to_line: interval endpoints are not strictly monotone");
    LineEdge e;
    e.left = static_cast<int>(n);
    e.right = static_cast<int>(n + 1);
    e.lo = line.intervals[n + 1].lo;
    e.hi = line.intervals[n].hi;
    // Footprints protrude past both incident overlaps, so no relator's
    // vertex group collapses into an edge group.
    if (line.intervals[n].lo >= e.lo || line.intervals[n + 1].hi <= e.hi)
      throw invalid_state("staggered_to_line: footprint trapped in an edge interval");
    line.edges.push_back(e);
  }
  return line;
}

// ---- Freiheitssatz probe ---------------------------------------------------------

enum class ProbeOutcome { embedded, refuted, unknown };

struct FreiheitssatzCertificates {
  std::vector<std::vector<Permutation>> quotients;
  int search_factors = 4;
  int search_conjugator = 2;
};

struct ProbeReport {
  ProbeOutcome outcome = ProbeOutcome::unknown;
  std::string route;
};

// Tries to certify that the vertex-group element a survives in
// F / <<r>>: abelianization first, then any supplied finite quotients;
// refutation only by an explicit bounded-search membership witness.
inline ProbeReport freiheitssatz_probe(const GraphOfGroups& g, const Word& r, const Word& a,
                                       const FreiheitssatzCertificates& certs = {}) {
  g.validate();
  int rank = g.gen_count();
  if (r.empty() || max_gen_index(r) >= rank)
    throw invalid_input("freiheitssatz_probe: relator must be a nontrivial presentation word");
  if (a.empty() || max_gen_index(a) >= rank)
    throw invalid_input("freiheitssatz_probe: probe element must be nontrivial");
  int home = g.vertex_of_gen(gen_of(a[0]));
  if (home < 0) throw invalid_input("freiheitssatz_probe: probe element must avoid stable letters");
  for (Letter l : a.letters())
    if (g.vertex_of_gen(gen_of(l)) != home)
      throw invalid_input("freiheitssatz_probe: probe element must lie in one vertex group");
  Word cyc = cyclically_reduce(r).first;
  bool inside = !cyc.empty();
  for (Letter l : cyc.letters())
    if (g.vertex_of_gen(gen_of(l)) != home) inside = false;
  if (inside)
    throw precondition_violation(
        "freiheitssatz_probe: a conjugate of the relator lies in the probe's vertex group");

  ProbeReport rep;
  auto rv = exponent_vector(r, rank);
  auto av = exponent_vector(a, rank);
  if (!detail::multiple_ratio(av, rv)) {
    rep.outcome = ProbeOutcome::embedded;
    rep.route = "abelianization";
    return rep;
  }
  for (const auto& images : certs.quotients) {
    if (static_cast<int>(images.size()) < rank)
      throw invalid_input("freiheitssatz_probe: certificate misses a generator");
    for (const Permutation& p : images) validate_permutation(p);
    if (!is_identity(permutation_image(r, images)))
      throw invalid_input("freiheitssatz_probe: certificate does not kill the relator");
    if (!is_identity(permutation_image(a, images))) {
      rep.outcome = ProbeOutcome::embedded;
      rep.route = "finite quotient";
      return rep;
    }
  }
  auto bs = WordProblemOracle::bounded_search(certs.search_factors, certs.search_conjugator);
  if (in_normal_closure(a, r, bs) == Verdict::yes) {
    rep.outcome = ProbeOutcome::refuted;
    rep.route = "bounded search membership";
    return rep;
  }
  rep.route = "no certificate applied";
  return rep;
}

// ---- serialization ------------------------------------------------------------------

inline nlohmann::json to_json(const GraphOfGroups& g) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : g.vertices) j["vertices"].push_back({{"name", v.name}, {"rank", v.rank}});
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"from", e.from},
                          {"to", e.to},
                          {"in_tree", e.in_tree},
                          {"factor_from", e.factor_from},
                          {"factor_to", e.factor_to}});
  return j;
}

inline GraphOfGroups gog_from_json(const nlohmann::json& j) {
  GraphOfGroups g;
  try {
    for (const auto& v : j.at("vertices"))
      g.vertices.push_back({v.at("name").get<std::string>(), v.at("rank").get<int>()});
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
      GogEdge ge;
      ge.from = e.at("from").get<int>();
      ge.to = e.at("to").get<int>();
      ge.in_tree = e.value("in_tree", false);
      ge.factor_from = e.value("factor_from", std::vector<int>{});
      ge.factor_to = e.value("factor_to", std::vector<int>{});
      g.edges.push_back(std::move(ge));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw invalid_input(std::string("graph of groups json: ") + ex.what());
  }
  g.validate();
  return g;
}

inline bool same_graph(const GraphOfGroups& a, const GraphOfGroups& b) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
  for (std::size_t i = 0; i < a.vertices.size(); ++i)
    if (a.vertices[i].name != b.vertices[i].name || a.vertices[i].rank != b.vertices[i].rank)
      return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const auto& x = a.edges[i];
    const auto& y = b.edges[i];
    if (x.from != y.from || x.to != y.to || x.in_tree != y.in_tree ||
        x.factor_from != y.factor_from || x.factor_to != y.factor_to)
      return false;
  }
  return true;
}

// Quotient graph in DOT with the maximal subtree bold.
inline std::string gog_to_dot(const GraphOfGroups& g) {
  return to_dot_quotient(TreeModel::gog(g));
}

}  // namespace clt
