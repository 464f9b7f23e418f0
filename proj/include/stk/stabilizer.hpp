#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stk/graph.hpp"
#include "stk/whitehead.hpp"
#include "stk/word.hpp"

namespace stk {

// Integer matrix; used for the matrix model of the abelian-case vertex
// stabilizers, acting on the right on row vectors.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<long long> e;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c, 0) {}
  static IntMatrix identity(int n);
  long long& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
  long long at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }
  IntMatrix mul(const IntMatrix& o) const;
  long long det() const;
  IntMatrix inverse() const;  // requires det = +-1
  bool operator==(const IntMatrix& o) const = default;
};

struct ClassFactor {
  int rep = -1;  // transversal member of the class
  EndoMap map;
};

struct TowerFactorization {
  std::vector<int> levels;                        // h_K down to 0
  std::vector<std::vector<ClassFactor>> factors;  // class factors per level
  EndoMap residual;                               // identity for St(K) members
};

// Membership test for St(K): homomorphism, support constraints, and an
// explicit two-sided inverse constructed through the tower machinery.
bool is_in_stK(const CommutationGraph& g, const AdmissibleLattice& lat,
               const EndoMap& phi, std::string* why = nullptr);

// zphi_k = zphi on A(k), identity elsewhere; the retraction s_k.
EndoMap level_restriction(const CommutationGraph& g, const AdmissibleLattice& lat,
                          const EndoMap& phi, int k);
// zphi_y = zphi on [y], identity elsewhere; requires phi in St_k^v, k = h(y).
EndoMap class_restriction(const CommutationGraph& g, const AdmissibleLattice& lat,
                          const EndoMap& phi, int y);

TowerFactorization tower_factorize(const CommutationGraph& g,
                                   const AdmissibleLattice& lat, const EndoMap& phi);
EndoMap recompose(const CommutationGraph& g, const TowerFactorization& t);

// Inverse of a member of St(K), built level by level. Throws on non-members.
EndoMap invert_in_stK(const CommutationGraph& g, const AdmissibleLattice& lat,
                      const EndoMap& phi);

// Coordinates of a(x): [x] first in vertex order, then the rest.
VertexSet matrix_coordinates(const CommutationGraph& g, int x);

IntMatrix to_matrix(const CommutationGraph& g, int x, const EndoMap& phi);
EndoMap from_matrix(const CommutationGraph& g, int x, const IntMatrix& m);
// M = M_D * M_U with M_D block diagonal and M_U unipotent, (M_U - I)^2 = 0.
std::pair<IntMatrix, IntMatrix> matrix_split(const CommutationGraph& g, int x,
                                             const IntMatrix& m);

struct FreeCaseSplit {
  EndoMap long_part;   // in St_{x,l}^v
  EndoMap short_part;  // in St_{x,s}^v, product of central transvections
  IntMatrix exponents; // p x |a_s| exponent block of the short part
};
// phi = short_part then long_part (applied in that order).
FreeCaseSplit free_case_split(const CommutationGraph& g, int x, const EndoMap& phi);

// Factorisation of a member of St_{x,l}^v over Omega_x by greedy Whitehead
// descent with a bounded breadth-first fallback.
std::vector<WhiteheadAuto> express_in_omega_x(const CommutationGraph& g, int x,
                                              const EndoMap& phi, int depth = 8);

}  // namespace stk
