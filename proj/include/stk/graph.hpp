#pragma once

#include <string>
#include <vector>

#include "stk/error.hpp"

namespace stk {

using VertexSet = std::vector<int>;  // sorted vertex indices, unique

// Commutation graph: finite simple graph with a fixed, ordered vertex set.
// Vertex order is the input order and never changes; all derived sets are
// reported in that order.
class CommutationGraph {
public:
  CommutationGraph(std::vector<std::string> vertex_names,
                   const std::vector<std::pair<std::string, std::string>>& edges);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // throws on unknown name
  bool adjacent(int u, int v) const { return adj_[u][v]; }

  VertexSet all_vertices() const;
  const VertexSet& neighbors(int v) const { return nbrs_[v]; }

private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> adj_;
  std::vector<VertexSet> nbrs_;
};

// Set helpers (inputs and outputs sorted).
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersect(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool set_contains(const VertexSet& a, int v);
bool subset_of(const VertexSet& a, const VertexSet& b);

// st(x) = lk(x) + x; extended to sets by intersection, st(empty) = X.
VertexSet star(const CommutationGraph& g, const VertexSet& y);
VertexSet star(const CommutationGraph& g, int x);
VertexSet link(const CommutationGraph& g, int x);
// cl(Y) = st(st(Y)); always a simplex.
VertexSet closure(const CommutationGraph& g, const VertexSet& y);
VertexSet closure(const CommutationGraph& g, int x);
// a(x) = intersection of st(y) over y in lk(x); X when lk(x) is empty.
VertexSet admissible(const CommutationGraph& g, int x);
// [x] under x~y iff st(x)=st(y) or lk(x)=lk(y).
VertexSet sim_class(const CommutationGraph& g, int x);

bool is_simplex(const CommutationGraph& g, const VertexSet& y);
// a(x)=cl(x), i.e. G([x]) free abelian; otherwise G([x]) is free.
bool abelian_case(const CommutationGraph& g, int x);

// Disjoint split a(x) = [x] + aS + aOut with aS = cl(x)\[x] and
// aOut = a(x)\(cl(x) u [x]).
struct ClassPartition {
  VertexSet cls;   // [x]
  VertexSet a_s;   // short-range block, subset of lk(x)
  VertexSet a_out; // long-range block, empty in the abelian case
  bool abelian = false;
};
ClassPartition class_partition(const CommutationGraph& g, int x);

// Stratification of the set K = { a(x) } by height, plus the inclusion
// lattice of the distinct admissible sets.
struct LatticeNode {
  VertexSet aset;      // a(x)
  VertexSet cls;       // [x] labelling this node
  int height = 0;      // longest strictly descending chain below aset
  int rep = -1;        // transversal member: least class vertex in input order
};

struct AdmissibleLattice {
  std::vector<LatticeNode> nodes;              // sorted by (height, rep)
  std::vector<std::pair<int, int>> cover_edges; // (lower, upper) node indices
  int h_K = 0;
  std::vector<VertexSet> level_vertices;    // v(k), k = 0..h_K
  std::vector<VertexSet> level_transversal; // C(k)
  std::vector<VertexSet> level_admissible;  // A(k)
  VertexSet transversal;                    // C, all class reps

  int node_of(int vertex) const;  // node whose class contains the vertex
  int height_of(int vertex) const;
};

AdmissibleLattice build_lattice(const CommutationGraph& g);

}  // namespace stk
