#pragma once

#include <queue>
#include <set>
#include <string>
#include <vector>

#include "clt/word.hpp"

namespace clt {

// Graph of groups with free vertex groups and trivial edge groups. The
// in_tree edges must form a spanning tree (the chosen maximal subtree Y0).
// Edge ends may carry a marked free factor of the endpoint's vertex group,
// given as a subset of its basis; these markers drive hypothesis checks.
struct GogVertex {
  std::string name;
  int rank = 0;
};

struct GogEdge {
  int from = 0;
  int to = 0;
  bool in_tree = false;
  std::vector<int> factor_from, factor_to;  // local generator indices
};

struct GraphOfGroups {
  std::vector<GogVertex> vertices;
  std::vector<GogEdge> edges;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  int total_vertex_rank() const {
    int n = 0;
    for (const auto& v : vertices) n += v.rank;
    return n;
  }

  int vertex_gen_offset(int v) const {
    int n = 0;
    for (int i = 0; i < v; ++i) n += vertices[i].rank;
    return n;
  }

  std::vector<int> stable_edges() const {  // non-tree edges, in edge order
    std::vector<int> s;
    for (int e = 0; e < num_edges(); ++e)
      if (!edges[e].in_tree) s.push_back(e);
    return s;
  }

  int gen_count() const { return total_vertex_rank() + static_cast<int>(stable_edges().size()); }

  // -1 when the global generator is a stable letter.
  int vertex_of_gen(int g) const {
    int n = 0;
    for (int v = 0; v < num_vertices(); ++v) {
      n += vertices[v].rank;
      if (g < n) return v;
    }
    return -1;
  }

  int stable_edge_of_gen(int g) const {
    auto s = stable_edges();
    int k = g - total_vertex_rank();
    if (k < 0 || k >= static_cast<int>(s.size())) throw invalid_input("stable_edge_of_gen: not a stable letter");
    return s[k];
  }

  int gen_of_stable_edge(int e) const {
    auto s = stable_edges();
    for (int k = 0; k < static_cast<int>(s.size()); ++k)
      if (s[k] == e) return total_vertex_rank() + k;
    throw invalid_input("gen_of_stable_edge: edge is in the tree");
  }

  Alphabet alphabet() const {
    std::vector<std::string> names;
    for (const auto& v : vertices) {
      std::string base = v.name;
      for (char& c : base) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      for (int i = 1; i <= v.rank; ++i) names.push_back(base + std::to_string(i));
    }
    for (std::size_t k = 1; k <= stable_edges().size(); ++k) names.push_back("z" + std::to_string(k));
    return Alphabet::named(names);
  }

  void validate() const {
    std::set<std::string> seen;
    for (const auto& v : vertices) {
      if (v.name.empty()) throw invalid_input("graph of groups: empty vertex name");
      if (v.rank < 0) throw invalid_input("graph of groups: negative rank");
      if (!seen.insert(v.name).second) throw invalid_input("graph of groups: duplicate vertex name '" + v.name + "'");
    }
    if (vertices.empty()) throw invalid_input("graph of groups: no vertices");
    int tree_edges = 0;
    for (const auto& e : edges) {
      if (e.from < 0 || e.from >= num_vertices() || e.to < 0 || e.to >= num_vertices())
        throw invalid_input("graph of groups: edge endpoint out of range");
      if (e.in_tree) {
        if (e.from == e.to) throw invalid_input("graph of groups: tree edge is a loop");
        ++tree_edges;
      }
      for (int g : e.factor_from)
        if (g < 0 || g >= vertices[e.from].rank) throw invalid_input("graph of groups: factor generator out of range");
      for (int g : e.factor_to)
        if (g < 0 || g >= vertices[e.to].rank) throw invalid_input("graph of groups: factor generator out of range");
    }
    if (tree_edges != num_vertices() - 1) throw invalid_input("graph of groups: in_tree edges do not form a spanning tree");
    // connectivity of the tree part
    std::vector<bool> vis(num_vertices(), false);
    std::queue<int> q;
    vis[0] = true;
    q.push(0);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& e : edges) {
        if (!e.in_tree) continue;
        int w = -1;
        if (e.from == v) w = e.to;
        if (e.to == v) w = e.from;
        if (w >= 0 && !vis[w]) {
          vis[w] = true;
          q.push(w);
        }
      }
    }
    for (bool b : vis)
      if (!b) throw invalid_input("graph of groups: in_tree edges do not span all vertices");
  }

  // Geodesic in the maximal subtree, as (edge index, traversed forward).
  std::vector<std::pair<int, bool>> tree_path(int a, int b) const {
    if (a == b) return {};
    std::vector<int> prev_edge(num_vertices(), -1), prev_vertex(num_vertices(), -1);
    std::queue<int> q;
    std::vector<bool> vis(num_vertices(), false);
    vis[a] = true;
    q.push(a);
    while (!q.empty() && !vis[b]) {
      int v = q.front();
      q.pop();
      for (int e = 0; e < num_edges(); ++e) {
        if (!edges[e].in_tree) continue;
        int w = -1;
        if (edges[e].from == v) w = edges[e].to;
        if (edges[e].to == v) w = edges[e].from;
        if (w >= 0 && !vis[w]) {
          vis[w] = true;
          prev_edge[w] = e;
          prev_vertex[w] = v;
          q.push(w);
        }
      }
    }
    std::vector<std::pair<int, bool>> path;
    for (int v = b; v != a; v = prev_vertex[v]) {
      int e = prev_edge[v];
      path.emplace_back(e, edges[e].to == v);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  int tree_dist(int a, int b) const { return static_cast<int>(tree_path(a, b).size()); }
};

}  // namespace clt
