#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "clt/trees.hpp"
#include "clt/word.hpp"

namespace clt {

// An ordering of edge orbits, least first. Orderings live on the orbit set:
// any orbit order lifts to an edge order in which every orbit is an interval,
// which is all conditions (S2)..(S7) can see.
struct Staggering {
  std::vector<int> ordering;
  bool operator==(const Staggering& o) const { return ordering == o.ordering; }
};

struct RelatorClass {
  Word representative;
  std::vector<int> members;  // indices into the deduplicated relator list
  std::set<int> footprint;
  int min_orbit = -1;
  int max_orbit = -1;
};

struct ConditionVerdict {
  bool evaluated = false;
  bool pass = false;
  std::string detail;
};

struct StaggerReport {
  std::vector<Word> relators;  // deduplicated input
  Staggering effective;        // given order plus unused orbits appended
  std::vector<RelatorClass> classes;
  std::array<ConditionVerdict, 7> conditions;  // conditions[k] holds S(k+1)
  std::pair<int, int> witness{-1, -1};

  bool staggered() const {
    for (int k = 0; k < 3; ++k)
      if (!conditions[k].evaluated || !conditions[k].pass) return false;
    return true;
  }
  bool strongly_staggered() const {
    if (!staggered()) return false;
    for (int k = 3; k < 7; ++k)
      if (!conditions[k].evaluated || !conditions[k].pass) return false;
    return true;
  }
};

namespace detail {

struct StaggerData {
  std::vector<Word> relators;
  std::vector<RelatorClass> classes;
  std::vector<int> vertex_fixers;  // relator indices failing (S2)
  std::set<int> used_orbits;
};

inline StaggerData prepare_stagger(const TreeModel& m, const std::vector<Word>& R) {
  StaggerData d;
  for (const Word& r : R) {
    m.check_word(r);
    if (std::find(d.relators.begin(), d.relators.end(), r) == d.relators.end())
      d.relators.push_back(r);
  }
  for (int i = 0; i < static_cast<int>(d.relators.size()); ++i) {
    if (fixes_vertex(m, d.relators[i])) {
      d.vertex_fixers.push_back(i);
      continue;
    }
    bool placed = false;
    for (auto& c : d.classes)
      if (are_conjugate(d.relators[i], c.representative)) {
        c.members.push_back(i);
        placed = true;
        break;
      }
    if (!placed) {
      RelatorClass c;
      c.representative = d.relators[i];
      c.members = {i};
      c.footprint = axis_footprint(m, d.relators[i]);
      d.classes.push_back(c);
      d.used_orbits.insert(c.footprint.begin(), c.footprint.end());
    }
  }
  return d;
}

inline std::vector<int> effective_ordering(const TreeModel& m, const StaggerData& d,
                                           const Staggering& ord) {
  std::set<int> seen;
  for (int o : ord.ordering) {
    if (o < 0 || o >= m.num_orbits()) throw invalid_input("staggering: orbit id out of range");
    if (!seen.insert(o).second) throw invalid_input("staggering: orbit listed twice");
  }
  for (int o : d.used_orbits)
    if (!seen.count(o)) throw invalid_input("staggering: ordering is missing a used orbit");
  std::vector<int> eff = ord.ordering;
  for (int o = 0; o < m.num_orbits(); ++o)
    if (!seen.count(o)) eff.push_back(o);
  return eff;
}

// (S3) over distinct class pairs, given orbit ranks. Returns a failing pair or
// (-1,-1).
inline std::pair<int, int> s3_witness(std::vector<RelatorClass>& classes,
                                      const std::vector<int>& rank_of_orbit) {
  for (auto& c : classes) {
    c.min_orbit = *std::min_element(c.footprint.begin(), c.footprint.end(),
                                    [&](int a, int b) { return rank_of_orbit[a] < rank_of_orbit[b]; });
    c.max_orbit = *std::max_element(c.footprint.begin(), c.footprint.end(),
                                    [&](int a, int b) { return rank_of_orbit[a] < rank_of_orbit[b]; });
  }
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      int mi = rank_of_orbit[classes[i].min_orbit], mj = rank_of_orbit[classes[j].min_orbit];
      int Mi = rank_of_orbit[classes[i].max_orbit], Mj = rank_of_orbit[classes[j].max_orbit];
      bool below = mi < mj && Mi < Mj;
      bool above = mj < mi && Mj < Mi;
      if (below == above) return {static_cast<int>(i), static_cast<int>(j)};
    }
  return {-1, -1};
}

}  // namespace detail

inline StaggerReport check_staggered(const TreeModel& m, const std::vector<Word>& R,
                                     const Staggering& ord) {
  auto d = detail::prepare_stagger(m, R);
  StaggerReport rep;
  rep.relators = d.relators;
  rep.effective.ordering = detail::effective_ordering(m, d, ord);
  rep.classes = d.classes;

  rep.conditions[0] = {true, true, "orbit orderings lift to edge orderings with orbit intervals"};

  if (d.vertex_fixers.empty()) {
    rep.conditions[1] = {true, true, ""};
  } else {
    std::ostringstream os;
    os << "relator " << d.vertex_fixers.front() << " fixes a vertex";
    rep.conditions[1] = {true, false, os.str()};
    rep.witness = {d.vertex_fixers.front(), -1};
    rep.conditions[2] = {false, false, "not evaluated: (S2) failed"};
    return rep;
  }

  std::vector<int> rank_of_orbit(m.num_orbits(), -1);
  for (std::size_t i = 0; i < rep.effective.ordering.size(); ++i)
    rank_of_orbit[rep.effective.ordering[i]] = static_cast<int>(i);
  auto bad = detail::s3_witness(rep.classes, rank_of_orbit);
  if (bad.first < 0) {
    rep.conditions[2] = {true, true, ""};
  } else {
    std::ostringstream os;
    os << "classes " << bad.first << " and " << bad.second
       << " are neither conjugate nor min/max separated";
    rep.conditions[2] = {true, false, os.str()};
    rep.witness = bad;
  }
  return rep;
}

inline StaggerReport check_strongly_staggered(const TreeModel& m, const std::vector<Word>& R,
                                              const Staggering& ord) {
  StaggerReport rep = check_staggered(m, R, ord);

  bool s4 = true;
  for (std::size_t i = 0; i < rep.classes.size() && s4; ++i)
    if (rep.classes[i].members.size() > 1) {
      s4 = false;
      std::ostringstream os;
      os << "relators " << rep.classes[i].members[0] << " and " << rep.classes[i].members[1]
         << " are distinct and conjugate";
      rep.conditions[3] = {true, false, os.str()};
      if (rep.witness.first < 0) rep.witness = {rep.classes[i].members[0], rep.classes[i].members[1]};
    }
  if (s4) rep.conditions[3] = {true, true, ""};

  const auto& g = m.graph();
  std::vector<int> parent(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) parent[v] = v;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool s5 = true;
  int non_loop = 0;
  for (const auto& e : g.edges) {
    if (e.from == e.to) continue;
    ++non_loop;
    int a = find(e.from), b = find(e.to);
    if (a == b) {
      s5 = false;
      break;
    }
    parent[a] = b;
  }
  if (s5 && non_loop != g.num_vertices() - 1) s5 = false;
  rep.conditions[4] = {true, s5, s5 ? "non-loop quotient edges form the unique maximal subtree"
                                    : "quotient has more than one maximal subtree"};

  rep.conditions[5] = {true, true, "finite orbit list is order isomorphic to an interval"};

  bool s7 = true;
  std::string s7_detail = "evaluated on the full quotient graph, unused orbits appended";
  for (std::size_t i = 0; i + 1 < rep.effective.ordering.size(); ++i) {
    const auto& e1 = g.edges[rep.effective.ordering[i]];
    const auto& e2 = g.edges[rep.effective.ordering[i + 1]];
    std::set<int> ends1{e1.from, e1.to};
    if (!ends1.count(e2.from) && !ends1.count(e2.to)) {
      s7 = false;
      std::ostringstream os;
      os << "consecutive orbits " << rep.effective.ordering[i] << " and "
         << rep.effective.ordering[i + 1] << " share no quotient vertex";
      s7_detail = os.str();
      break;
    }
  }
  rep.conditions[6] = {true, s7, s7_detail};
  return rep;
}

inline std::optional<Staggering> find_staggering(const TreeModel& m, const std::vector<Word>& R,
                                                 int budget = 10000) {
  auto d = detail::prepare_stagger(m, R);
  if (!d.vertex_fixers.empty()) return std::nullopt;

  std::vector<int> used(d.used_orbits.begin(), d.used_orbits.end());
  auto passes = [&](const std::vector<int>& perm) {
    std::vector<int> rank_of_orbit(m.num_orbits(), -1);
    int next = 0;
    for (int o : perm) rank_of_orbit[o] = next++;
    for (int o = 0; o < m.num_orbits(); ++o)
      if (rank_of_orbit[o] < 0) rank_of_orbit[o] = next++;
    auto classes = d.classes;
    return detail::s3_witness(classes, rank_of_orbit).first < 0;
  };
  auto finish = [&](std::vector<int> perm) {
    Staggering s;
    s.ordering = std::move(perm);
    s.ordering = detail::effective_ordering(m, d, s);
    return s;
  };

  if (used.size() <= 8) {
    std::vector<int> perm = used;
    do {
      if (passes(perm)) return finish(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
  }

  // Heuristic regime: order classes by provisional footprint extremes, place
  // footprints in class order, retry over class permutations within budget.
  std::vector<int> class_idx(d.classes.size());
  for (std::size_t i = 0; i < class_idx.size(); ++i) class_idx[i] = static_cast<int>(i);
  std::sort(class_idx.begin(), class_idx.end(), [&](int a, int b) {
    auto ka = std::make_pair(*d.classes[a].footprint.begin(), *d.classes[a].footprint.rbegin());
    auto kb = std::make_pair(*d.classes[b].footprint.begin(), *d.classes[b].footprint.rbegin());
    if (ka != kb) return ka < kb;
    return a < b;
  });
  int tried = 0;
  do {
    std::vector<int> perm;
    std::set<int> placed;
    for (int ci : class_idx)
      for (int o : d.classes[ci].footprint)
        if (placed.insert(o).second) perm.push_back(o);
    if (passes(perm)) return finish(perm);
  } while (++tried < budget && std::next_permutation(class_idx.begin(), class_idx.end()));
  return std::nullopt;
}

}  // namespace clt
