#include "stk/stabilizer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace stk {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  if (cols != o.rows) throw validation_error("matrix dimension mismatch");
  IntMatrix out(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      long long v = at(i, k);
      if (!v) continue;
      for (int j = 0; j < o.cols; ++j) out.at(i, j) += v * o.at(k, j);
    }
  return out;
}

long long IntMatrix::det() const {
  if (rows != cols) throw validation_error("det of non-square matrix");
  int n = rows;
  if (n == 0) return 1;
  // cofactor expansion; matrices here are small
  if (n == 1) return at(0, 0);
  long long total = 0;
  for (int j = 0; j < n; ++j) {
    if (!at(0, j)) continue;
    IntMatrix sub(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        sub.at(i - 1, cc++) = at(i, c);
      }
    }
    long long term = at(0, j) * sub.det();
    total += (j % 2 ? -term : term);
  }
  return total;
}

IntMatrix IntMatrix::inverse() const {
  long long d = det();
  if (d != 1 && d != -1) throw validation_error("matrix is not invertible over Z");
  int n = rows;
  IntMatrix adj(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMatrix sub(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          sub.at(rr, cc++) = at(r, c);
        }
        ++rr;
      }
      long long cof = sub.det();
      if ((i + j) % 2) cof = -cof;
      adj.at(j, i) = cof * d;  // d = 1/d for d = +-1
    }
  return adj;
}

static bool supports_ok(const CommutationGraph& g, const EndoMap& phi, std::string* why) {
  for (int x = 0; x < g.size(); ++x) {
    if (!subset_of(support(phi.images[x]), admissible(g, x))) {
      if (why)
        *why = "image of " + g.name(x) + " leaves the subgroup on a(" + g.name(x) + ")";
      return false;
    }
  }
  return true;
}

EndoMap level_restriction(const CommutationGraph& g, const AdmissibleLattice& lat,
                          const EndoMap& phi, int k) {
  if (k < 0 || k > lat.h_K) throw validation_error("level out of range");
  EndoMap out = identity_endo(g);
  for (int z : lat.level_admissible[k]) out.images[z] = phi.images[z];
  return out;
}

EndoMap class_restriction(const CommutationGraph& g, const AdmissibleLattice& lat,
                          const EndoMap& phi, int y) {
  int k = lat.height_of(y);
  for (int z = 0; z < g.size(); ++z)
    if (!set_contains(lat.level_vertices[k], z) &&
        phi.images[z] != NormalWord{{Letter(z, 1)}})
      throw validation_error("class_restriction: map is not level-" + std::to_string(k) +
                             "-vertex-supported");
  EndoMap out = identity_endo(g);
  for (int z : sim_class(g, y)) out.images[z] = phi.images[z];
  return out;
}

VertexSet matrix_coordinates(const CommutationGraph& g, int x) {
  VertexSet cls = sim_class(g, x);
  VertexSet rest = set_difference(admissible(g, x), cls);
  VertexSet coords = cls;
  coords.insert(coords.end(), rest.begin(), rest.end());
  return coords;
}

IntMatrix to_matrix(const CommutationGraph& g, int x, const EndoMap& phi) {
  if (!abelian_case(g, x)) throw validation_error("to_matrix: free-case class");
  VertexSet coords = matrix_coordinates(g, x);
  int r = static_cast<int>(coords.size());
  int s = static_cast<int>(sim_class(g, x).size());
  IntMatrix m(r, r);
  for (int i = 0; i < r; ++i) {
    const NormalWord& img = phi.images[coords[i]];
    if (!subset_of(support(img), admissible(g, x)))
      throw validation_error("to_matrix: image outside the admissible subgroup");
    for (int j = 0; j < r; ++j) m.at(i, j) = exponent_sum(img, coords[j]);
  }
  for (int i = s; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (m.at(i, j) != (i == j ? 1 : 0))
        throw validation_error("to_matrix: map moves a vertex outside the class");
  IntMatrix a1(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) a1.at(i, j) = m.at(i, j);
  long long d = a1.det();
  if (d != 1 && d != -1)
    throw validation_error("to_matrix: class block is not in GL(s,Z)");
  return m;
}

EndoMap from_matrix(const CommutationGraph& g, int x, const IntMatrix& m) {
  if (!abelian_case(g, x)) throw validation_error("from_matrix: free-case class");
  VertexSet coords = matrix_coordinates(g, x);
  int r = static_cast<int>(coords.size());
  int s = static_cast<int>(sim_class(g, x).size());
  if (m.rows != r || m.cols != r) throw validation_error("from_matrix: wrong shape");
  for (int i = s; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (m.at(i, j) != (i == j ? 1 : 0))
        throw validation_error("from_matrix: conditions (ii)/(iii) fail");
  IntMatrix a1(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) a1.at(i, j) = m.at(i, j);
  long long d = a1.det();
  if (d != 1 && d != -1) throw validation_error("from_matrix: block not in GL(s,Z)");
  EndoMap out = identity_endo(g);
  for (int i = 0; i < s; ++i) {
    Letters w;
    for (int j = 0; j < r; ++j) {
      long long c = m.at(i, j);
      for (long long t = 0; t < std::abs(c); ++t)
        w.push_back(Letter(coords[j], c > 0 ? 1 : -1));
    }
    out.images[coords[i]] = normal_form(g, w);
  }
  return out;
}

std::pair<IntMatrix, IntMatrix> matrix_split(const CommutationGraph& g, int x,
                                             const IntMatrix& m) {
  int s = static_cast<int>(sim_class(g, x).size());
  int r = m.rows;
  IntMatrix a1(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) a1.at(i, j) = m.at(i, j);
  if (std::abs(a1.det()) != 1) throw validation_error("matrix_split: invalid matrix");
  IntMatrix md = IntMatrix::identity(r);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) md.at(i, j) = m.at(i, j);
  IntMatrix a1inv = a1.inverse();
  IntMatrix mu = IntMatrix::identity(r);
  // upper block of M_U is A1^-1 B where B is the upper right block of M
  for (int i = 0; i < s; ++i)
    for (int j = s; j < r; ++j) {
      long long v = 0;
      for (int k = 0; k < s; ++k) v += a1inv.at(i, k) * m.at(k, j);
      mu.at(i, j) = v;
    }
  return {md, mu};
}

FreeCaseSplit free_case_split(const CommutationGraph& g, int x, const EndoMap& phi) {
  if (abelian_case(g, x)) throw validation_error("free_case_split: abelian-case class");
  auto part = class_partition(g, x);
  int p = static_cast<int>(part.cls.size());
  int qs = static_cast<int>(part.a_s.size());
  for (int z = 0; z < g.size(); ++z)
    if (!set_contains(part.cls, z) && phi.images[z] != NormalWord{{Letter(z, 1)}})
      throw validation_error("free_case_split: map moves a vertex outside the class");

  FreeCaseSplit out;
  out.exponents = IntMatrix(p, qs);
  EndoMap short_inv = identity_endo(g);
  out.short_part = identity_endo(g);
  for (int i = 0; i < p; ++i) {
    const NormalWord& img = phi.images[part.cls[i]];
    if (!subset_of(support(img), admissible(g, x)))
      throw validation_error("free_case_split: image outside the admissible subgroup");
    Letters pos, neg;
    for (int j = 0; j < qs; ++j) {
      long long c = exponent_sum(img, part.a_s[j]);
      out.exponents.at(i, j) = c;
      for (long long t = 0; t < std::abs(c); ++t) {
        pos.push_back(Letter(part.a_s[j], c > 0 ? 1 : -1));
        neg.push_back(Letter(part.a_s[j], c > 0 ? -1 : 1));
      }
    }
    Letters w{Letter(part.cls[i], 1)};
    w.insert(w.end(), pos.begin(), pos.end());
    out.short_part.images[part.cls[i]] = normal_form(g, w);
    Letters wi{Letter(part.cls[i], 1)};
    wi.insert(wi.end(), neg.begin(), neg.end());
    short_inv.images[part.cls[i]] = normal_form(g, wi);
  }
  // phi_0 = phi_1^-1 . phi: apply the inverse of the central part first
  out.long_part = compose_endo(g, short_inv, phi);
  VertexSet lrange = set_union(part.cls, part.a_out);
  for (int i = 0; i < p; ++i)
    if (!subset_of(support(out.long_part.images[part.cls[i]]), lrange))
      throw validation_error("free_case_split: residual is not long-range");
  return out;
}

namespace {

struct DescentState {
  std::vector<NormalWord> images;
  auto operator<=>(const DescentState&) const = default;
};

int total_length(const DescentState& s) {
  int t = 0;
  for (const auto& w : s.images) t += w.length();
  return t;
}

}  // namespace

std::vector<WhiteheadAuto> express_in_omega_x(const CommutationGraph& g, int x,
                                              const EndoMap& phi, int depth) {
  auto part = class_partition(g, x);
  int p = static_cast<int>(part.cls.size());
  GeneratorFamily omega = enumerate_family(g, FamilyKind::OmegaX, x);

  DescentState cur;
  for (int v : part.cls) cur.images.push_back(phi.images[v]);
  std::vector<WhiteheadAuto> applied;  // omegas applied on the right, in order

  auto step = [&](const DescentState& s, const WhiteheadAuto& w) {
    DescentState n;
    n.images.reserve(s.images.size());
    for (const auto& img : s.images) n.images.push_back(w.apply(img));
    return n;
  };

  while (total_length(cur) > p) {
    int best = -1, best_total = total_length(cur);
    for (int i = 0; i < static_cast<int>(omega.members.size()); ++i) {
      int t = total_length(step(cur, omega.members[i]));
      if (t < best_total) {
        best_total = t;
        best = i;
      }
    }
    if (best >= 0) {
      cur = step(cur, omega.members[best]);
      applied.push_back(omega.members[best]);
      continue;
    }
    // breadth-first fallback across equal-length plateaus
    std::map<DescentState, std::pair<DescentState, int>> parent;  // state -> (prev, gen)
    std::deque<std::pair<DescentState, int>> queue{{cur, 0}};
    parent[cur] = {cur, -1};
    std::optional<DescentState> found;
    const size_t state_cap = 20000;
    while (!queue.empty() && !found) {
      auto [s, d] = queue.front();
      queue.pop_front();
      if (d >= depth) continue;
      for (int i = 0; i < static_cast<int>(omega.members.size()); ++i) {
        DescentState n = step(s, omega.members[i]);
        if (total_length(n) > total_length(cur)) continue;
        if (parent.count(n)) continue;
        parent[n] = {s, i};
        if (total_length(n) < total_length(cur)) {
          found = n;
          break;
        }
        queue.emplace_back(n, d + 1);
        if (parent.size() > state_cap)
          throw bound_error("express_in_omega_x: search bound exceeded");
      }
    }
    if (!found)
      throw bound_error("express_in_omega_x: depth bound exceeded");
    std::vector<int> path;
    DescentState at = *found;
    while (true) {
      auto [prev, gen] = parent[at];
      if (gen < 0) break;
      path.push_back(gen);
      at = prev;
    }
    std::reverse(path.begin(), path.end());
    for (int gi : path) {
      cur = step(cur, omega.members[gi]);
      applied.push_back(omega.members[gi]);
    }
  }

  // residual must be a signed permutation of the class letters
  std::vector<Letter> table = WhiteheadAuto::identity(g).perm();
  for (int i = 0; i < p; ++i) {
    if (cur.images[i].length() != 1)
      throw validation_error("express_in_omega_x: residual image is not a letter");
    Letter img = cur.images[i].letters[0];
    if (!set_contains(part.cls, img.vertex))
      throw validation_error("express_in_omega_x: residual leaves the class");
    table[Letter(part.cls[i], 1).code()] = img;
    table[Letter(part.cls[i], -1).code()] = img.inverse();
  }
  WhiteheadAuto sigma = WhiteheadAuto::type1(g, std::move(table));

  // phi . w_1 ... w_t = sigma, hence phi = sigma . w_t^-1 ... w_1^-1
  std::vector<WhiteheadAuto> out;
  if (!sigma.is_identity()) out.push_back(sigma);
  for (auto it = applied.rbegin(); it != applied.rend(); ++it)
    out.push_back(it->inverse());

  EndoMap check = compose_to_map(g, out);
  for (int v = 0; v < g.size(); ++v)
    if (check.images[v] != phi.images[v])
      throw validation_error("express_in_omega_x: recomposition mismatch");
  return out;
}

namespace {

// Inverse of a single class factor of St_y^v.
EndoMap invert_class_factor(const CommutationGraph& g, int y, const EndoMap& phi,
                            std::string* why) {
  if (abelian_case(g, y)) {
    IntMatrix m = to_matrix(g, y, phi);
    return from_matrix(g, y, m.inverse());
  }
  FreeCaseSplit split = free_case_split(g, y, phi);
  std::vector<WhiteheadAuto> word = express_in_omega_x(g, y, split.long_part);
  EndoMap long_inv = identity_endo(g);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    long_inv = compose_endo(g, long_inv, it->inverse().to_endo());
  // phi = short . long, phi^-1 = long^-1 . short^-1
  auto part = class_partition(g, y);
  EndoMap short_inv = identity_endo(g);
  for (size_t i = 0; i < part.cls.size(); ++i) {
    Letters w{Letter(part.cls[i], 1)};
    for (size_t j = 0; j < part.a_s.size(); ++j) {
      long long c = split.exponents.at(static_cast<int>(i), static_cast<int>(j));
      for (long long t = 0; t < std::abs(c); ++t)
        w.push_back(Letter(part.a_s[j], c > 0 ? -1 : 1));
    }
    short_inv.images[part.cls[i]] = normal_form(g, w);
  }
  (void)why;
  return compose_endo(g, long_inv, short_inv);
}

// Tower recursion: factors phi in St_k and computes its inverse.
struct LevelPeel {
  std::vector<std::vector<ClassFactor>> factors_desc;  // level k down to 0
  EndoMap inverse;
};

LevelPeel peel(const CommutationGraph& g, const AdmissibleLattice& lat,
               const EndoMap& phi, int k, std::string* why) {
  LevelPeel out;
  if (k == 0) {
    EndoMap inv = identity_endo(g);
    std::vector<ClassFactor> cfs;
    for (int y : lat.level_transversal[0]) {
      ClassFactor cf{y, class_restriction(g, lat, phi, y)};
      inv = compose_endo(g, inv, invert_class_factor(g, y, cf.map, why));
      cfs.push_back(std::move(cf));
    }
    out.factors_desc.push_back(std::move(cfs));
    out.inverse = inv;
    return out;
  }
  EndoMap low = level_restriction(g, lat, phi, k - 1);
  LevelPeel inner = peel(g, lat, low, k - 1, why);
  EndoMap theta = compose_endo(g, phi, inner.inverse);  // phi . phi_{k-1}^-1 in St_k^v
  std::vector<ClassFactor> cfs;
  EndoMap theta_inv = identity_endo(g);
  for (int y : lat.level_transversal[k]) {
    ClassFactor cf{y, class_restriction(g, lat, theta, y)};
    theta_inv = compose_endo(g, theta_inv, invert_class_factor(g, y, cf.map, why));
    cfs.push_back(std::move(cf));
  }
  out.factors_desc.push_back(std::move(cfs));
  for (auto& f : inner.factors_desc) out.factors_desc.push_back(std::move(f));
  // phi = theta . phi_{k-1}, so phi^-1 = phi_{k-1}^-1 . theta^-1
  out.inverse = compose_endo(g, inner.inverse, theta_inv);
  return out;
}

}  // namespace

TowerFactorization tower_factorize(const CommutationGraph& g,
                                   const AdmissibleLattice& lat, const EndoMap& phi) {
  std::string why;
  if (!is_homomorphism(g, phi))
    throw validation_error("tower_factorize: not a homomorphism");
  if (!supports_ok(g, phi, &why)) throw validation_error("tower_factorize: " + why);
  LevelPeel p = peel(g, lat, phi, lat.h_K, &why);
  TowerFactorization t;
  for (int k = lat.h_K; k >= 0; --k) t.levels.push_back(k);
  t.factors = std::move(p.factors_desc);
  t.residual = identity_endo(g);
  EndoMap re = recompose(g, t);
  if (re != phi) throw validation_error("tower_factorize: recomposition mismatch");
  EndoMap check = compose_endo(g, phi, p.inverse);
  if (!is_identity(check, g))
    throw validation_error("tower_factorize: inverse verification failed");
  return t;
}

EndoMap recompose(const CommutationGraph& g, const TowerFactorization& t) {
  EndoMap acc = identity_endo(g);
  for (const auto& level : t.factors)
    for (const auto& cf : level) acc = compose_endo(g, acc, cf.map);
  return compose_endo(g, acc, t.residual);
}

EndoMap invert_in_stK(const CommutationGraph& g, const AdmissibleLattice& lat,
                      const EndoMap& phi) {
  std::string why;
  if (!is_homomorphism(g, phi))
    throw validation_error("invert_in_stK: not a homomorphism");
  if (!supports_ok(g, phi, &why)) throw validation_error("invert_in_stK: " + why);
  LevelPeel p = peel(g, lat, phi, lat.h_K, &why);
  if (!is_identity(compose_endo(g, phi, p.inverse), g) ||
      !is_identity(compose_endo(g, p.inverse, phi), g))
    throw validation_error("invert_in_stK: no two-sided inverse");
  return p.inverse;
}

bool is_in_stK(const CommutationGraph& g, const AdmissibleLattice& lat,
               const EndoMap& phi, std::string* why) {
  if (!is_homomorphism(g, phi)) {
    if (why) *why = "not a homomorphism";
    throw validation_error("is_in_stK: input is not a homomorphism");
  }
  if (!supports_ok(g, phi, why)) return false;
  try {
    EndoMap inv = invert_in_stK(g, lat, phi);
    (void)inv;
    return true;
  } catch (const Error& e) {
    if (why) *why = e.what();
    return false;
  }
}

}  // namespace stk
