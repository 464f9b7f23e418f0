#include "stk/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace stk {

CommutationGraph::CommutationGraph(
    std::vector<std::string> vertex_names,
    const std::vector<std::pair<std::string, std::string>>& edges)
    : names_(std::move(vertex_names)) {
  if (names_.empty()) throw validation_error("empty vertex set");
  std::map<std::string, int> index;
  for (int i = 0; i < size(); ++i) {
    if (!index.emplace(names_[i], i).second)
      throw validation_error("duplicate vertex name: " + names_[i]);
  }
  adj_.assign(size(), std::vector<bool>(size(), false));
  for (const auto& [a, b] : edges) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw validation_error("edge endpoint not a vertex: " + a);
    if (ib == index.end()) throw validation_error("edge endpoint not a vertex: " + b);
    if (ia->second == ib->second) throw validation_error("self-loop at vertex: " + a);
    adj_[ia->second][ib->second] = true;
    adj_[ib->second][ia->second] = true;
  }
  nbrs_.resize(size());
  for (int u = 0; u < size(); ++u)
    for (int v = 0; v < size(); ++v)
      if (adj_[u][v]) nbrs_[u].push_back(v);
}

int CommutationGraph::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  throw validation_error("unknown vertex name: " + name);
}

VertexSet CommutationGraph::all_vertices() const {
  VertexSet all(size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const VertexSet& a, int v) {
  return std::binary_search(a.begin(), a.end(), v);
}

bool subset_of(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VertexSet star(const CommutationGraph& g, int x) {
  VertexSet s = g.neighbors(x);
  s.insert(std::lower_bound(s.begin(), s.end(), x), x);
  return s;
}

VertexSet star(const CommutationGraph& g, const VertexSet& y) {
  VertexSet out = g.all_vertices();  // st(empty) = X
  for (int v : y) {
    if (v < 0 || v >= g.size()) throw validation_error("vertex index out of range");
    out = set_intersect(out, star(g, v));
  }
  return out;
}

VertexSet link(const CommutationGraph& g, int x) {
  if (x < 0 || x >= g.size()) throw validation_error("vertex index out of range");
  return g.neighbors(x);
}

VertexSet closure(const CommutationGraph& g, const VertexSet& y) {
  return star(g, star(g, y));
}

VertexSet closure(const CommutationGraph& g, int x) {
  return closure(g, VertexSet{x});
}

VertexSet admissible(const CommutationGraph& g, int x) {
  VertexSet out = g.all_vertices();
  for (int v : link(g, x)) out = set_intersect(out, star(g, v));
  return out;
}

VertexSet sim_class(const CommutationGraph& g, int x) {
  if (x < 0 || x >= g.size()) throw validation_error("vertex index out of range");
  VertexSet stx = star(g, x);
  VertexSet lkx = link(g, x);
  VertexSet out;
  for (int z = 0; z < g.size(); ++z)
    if (star(g, z) == stx || link(g, z) == lkx) out.push_back(z);
  return out;
}

bool is_simplex(const CommutationGraph& g, const VertexSet& y) {
  for (size_t i = 0; i < y.size(); ++i)
    for (size_t j = i + 1; j < y.size(); ++j)
      if (!g.adjacent(y[i], y[j])) return false;
  return true;
}

bool abelian_case(const CommutationGraph& g, int x) {
  return admissible(g, x) == closure(g, x);
}

ClassPartition class_partition(const CommutationGraph& g, int x) {
  ClassPartition out;
  out.cls = sim_class(g, x);
  VertexSet a = admissible(g, x);
  VertexSet cl = closure(g, x);
  out.abelian = (a == cl);
  out.a_s = set_difference(cl, out.cls);
  out.a_out = set_difference(a, set_union(cl, out.cls));
  return out;
}

int AdmissibleLattice::node_of(int vertex) const {
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
    if (set_contains(nodes[i].cls, vertex)) return i;
  throw validation_error("vertex not found in lattice");
}

int AdmissibleLattice::height_of(int vertex) const {
  return nodes[node_of(vertex)].height;
}

AdmissibleLattice build_lattice(const CommutationGraph& g) {
  AdmissibleLattice lat;
  // Distinct admissible sets; by Lemma on admissible sets a(x)=a(z) iff z in [x],
  // so grouping by a(x) also partitions X into classes.
  std::vector<LatticeNode> nodes;
  for (int x = 0; x < g.size(); ++x) {
    VertexSet a = admissible(g, x);
    bool found = false;
    for (auto& n : nodes)
      if (n.aset == a) {
        found = true;
        break;
      }
    if (!found) {
      LatticeNode n;
      n.aset = a;
      n.cls = sim_class(g, x);
      n.rep = n.cls.front();
      nodes.push_back(std::move(n));
    }
  }

  // Heights by longest-path DP over the strict inclusion DAG.
  int m = static_cast<int>(nodes.size());
  std::vector<std::vector<bool>> below(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && nodes[i].aset != nodes[j].aset &&
          subset_of(nodes[i].aset, nodes[j].aset))
        below[i][j] = true;  // i strictly contained in j

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return nodes[a].aset.size() < nodes[b].aset.size();
  });
  for (int idx : order) {
    int h = 0;
    for (int j = 0; j < m; ++j)
      if (below[j][idx]) h = std::max(h, nodes[j].height + 1);
    nodes[idx].height = h;
  }

  std::sort(nodes.begin(), nodes.end(), [](const LatticeNode& a, const LatticeNode& b) {
    return std::make_pair(a.height, a.rep) < std::make_pair(b.height, b.rep);
  });
  lat.nodes = nodes;

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (!(lat.nodes[i].aset != lat.nodes[j].aset &&
            subset_of(lat.nodes[i].aset, lat.nodes[j].aset)))
        continue;
      bool cover = true;
      for (int k = 0; k < m && cover; ++k) {
        if (k == i || k == j) continue;
        if (subset_of(lat.nodes[i].aset, lat.nodes[k].aset) &&
            subset_of(lat.nodes[k].aset, lat.nodes[j].aset) &&
            lat.nodes[k].aset != lat.nodes[i].aset &&
            lat.nodes[k].aset != lat.nodes[j].aset)
          cover = false;
      }
      if (cover) lat.cover_edges.emplace_back(i, j);
    }
  std::sort(lat.cover_edges.begin(), lat.cover_edges.end());

  lat.h_K = 0;
  for (const auto& n : lat.nodes) lat.h_K = std::max(lat.h_K, n.height);

  lat.level_vertices.assign(lat.h_K + 1, {});
  lat.level_transversal.assign(lat.h_K + 1, {});
  for (const auto& n : lat.nodes) {
    lat.level_vertices[n.height] = set_union(lat.level_vertices[n.height], n.cls);
    lat.level_transversal[n.height].push_back(n.rep);
    lat.transversal.push_back(n.rep);
  }
  for (auto& t : lat.level_transversal) std::sort(t.begin(), t.end());
  std::sort(lat.transversal.begin(), lat.transversal.end());

  lat.level_admissible.assign(lat.h_K + 1, {});
  VertexSet acc;
  for (int k = 0; k <= lat.h_K; ++k) {
    for (const auto& n : lat.nodes)
      if (n.height == k) acc = set_union(acc, n.aset);
    lat.level_admissible[k] = acc;
  }
  return lat;
}

}  // namespace stk
