#include <algorithm>
#include <deque>
#include <sstream>

#include "stk/presentation.hpp"

namespace stk {

namespace {

void push_checked(const CommutationGraph& g, Presentation& p, SymWord w,
                  const std::string& family, const std::string& note) {
  w = sym_free_reduce(std::move(w));
  if (w.empty()) return;
  if (!is_identity(sym_word_action(g, p, w), g))
    throw validation_error("emitted relator fails verification [" + family + "] " +
                           note + ": " + sym_word_str(p, w));
  Relator r;
  r.word = std::move(w);
  r.families = {family};
  r.note = note;
  p.relators.push_back(std::move(r));
}

// Factor a GL(s,Z) matrix into E_{ij} / O_i symbols by integer row reduction.
SymWord gl_word(const ClassBlock& b, IntMatrix m) {
  int s = m.rows;
  struct Op {
    bool sign;  // O_i when true, else row_i += q * row_j
    int i, j;
    long long q;
  };
  std::vector<Op> ops;
  auto rowop = [&](int i, int j, long long q) {
    if (!q) return;
    for (int c = 0; c < s; ++c) m.at(i, c) += q * m.at(j, c);
    ops.push_back({false, i, j, q});
  };
  for (int col = 0; col < s; ++col) {
    while (true) {
      int best = -1, cnt = 0;
      for (int r = col; r < s; ++r)
        if (m.at(r, col)) {
          ++cnt;
          if (best < 0 || std::abs(m.at(r, col)) < std::abs(m.at(best, col))) best = r;
        }
      if (cnt == 0) throw validation_error("gl_word: matrix is singular");
      if (cnt == 1 && std::abs(m.at(best, col)) == 1) {
        if (best != col) {
          // rows (col, best) <- (row_best, -row_col)
          rowop(col, best, 1);
          rowop(best, col, -1);
          rowop(col, best, 1);
        }
        break;
      }
      if (cnt == 1) throw validation_error("gl_word: pivot not a unit");
      for (int r = col; r < s; ++r) {
        if (r == best || !m.at(r, col)) continue;
        rowop(r, best, -(m.at(r, col) / m.at(best, col)));
      }
    }
    for (int r = 0; r < s; ++r)
      if (r != col && m.at(r, col)) rowop(r, col, -m.at(r, col) * m.at(col, col));
  }
  SymWord w;
  // L_t ... L_1 M = diag(+-1), so M = L_1^-1 ... L_t^-1 . sign fixes
  for (const auto& op : ops) {
    long long q = -op.q;
    for (long long t = 0; t < std::abs(q); ++t)
      w.emplace_back(b.e_idx.at({op.i, op.j}), q > 0 ? 1 : -1);
  }
  for (int i = 0; i < s; ++i)
    if (m.at(i, i) < 0) w.emplace_back(b.o_idx[i], 1);
  return w;
}

// Type 2 Omega_x member as a word over the block's kept transvections.
SymWord omega_member_word(const ClassBlock& b, const WhiteheadAuto& m) {
  SymWord w;
  Letter a = m.multiplier();
  for (Letter l : letterset_remove(m.A(), a)) {
    if (a.sign > 0)
      w.emplace_back(b.tau_idx.at({l, a}), 1);
    else
      w.emplace_back(b.tau_idx.at({l, a.inverse()}), -1);
  }
  return w;
}

}  // namespace

SymWord class_factor_word(const CommutationGraph& g, const StKPresentation& sp,
                          const ClassBlock& block, const EndoMap& phi) {
  SymWord w;
  if (block.abelian) {
    IntMatrix m = to_matrix(g, block.rep, phi);
    auto [md, mu] = matrix_split(g, block.rep, m);
    IntMatrix a1(block.s, block.s);
    for (int i = 0; i < block.s; ++i)
      for (int j = 0; j < block.s; ++j) a1.at(i, j) = md.at(i, j);
    w = gl_word(block, a1);
    for (int i = 0; i < block.s; ++i)
      for (int j = block.s; j < block.r; ++j) {
        long long c = mu.at(i, j);
        for (long long t = 0; t < std::abs(c); ++t)
          w.emplace_back(block.z_idx.at({i, j - block.s}), c > 0 ? 1 : -1);
      }
  } else {
    FreeCaseSplit split = free_case_split(g, block.rep, phi);
    for (int i = 0; i < block.p; ++i)
      for (int j = 0; j < block.q_minus_p; ++j) {
        long long c = split.exponents.at(i, j);
        for (long long t = 0; t < std::abs(c); ++t)
          w.emplace_back(block.z_idx.at({i, j}), c > 0 ? 1 : -1);
      }
    auto members = express_in_omega_x(g, block.rep, split.long_part, sp.express_depth);
    for (const auto& m : members) {
      if (m.is_type1()) {
        if (m.is_identity()) continue;
        if (!block.perm_words.empty()) {
          const SymWord& part = block.perm_words.at(m.perm());
          w.insert(w.end(), part.begin(), part.end());
          continue;
        }
        bool found = false;
        for (int gi : block.perm_gens)
          if (sp.pres.generators[gi].binding.perm() == m.perm()) {
            w.emplace_back(gi, 1);
            found = true;
            break;
          }
        if (!found)
          throw validation_error("class_factor_word: unknown class permutation");
      } else {
        SymWord part = omega_member_word(block, m);
        w.insert(w.end(), part.begin(), part.end());
      }
    }
  }
  w = sym_free_reduce(std::move(w));
  if (sym_word_action(g, sp.pres, w) != phi)
    throw validation_error("class_factor_word: refactorisation mismatch");
  return w;
}

namespace {

void build_abelian_block(const CommutationGraph& g, StKPresentation& sp,
                         ClassBlock& b) {
  Presentation& p = sp.pres;
  b.coords = matrix_coordinates(g, b.rep);
  b.r = static_cast<int>(b.coords.size());
  b.s = static_cast<int>(sim_class(g, b.rep).size());
  int s = b.s;
  for (int i = 0; i < s; ++i) {
    auto inv = WhiteheadAuto::inversion(g, b.coords[i]);
    b.o_idx.push_back(static_cast<int>(p.generators.size()));
    b.gens.push_back(b.o_idx.back());
    p.generators.push_back({symbol_name(g, inv, g.name(b.rep)), inv});
  }
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      if (i == j) continue;
      auto t = WhiteheadAuto::transvection(g, Letter(b.coords[i], 1),
                                           Letter(b.coords[j], 1));
      b.e_idx[{i, j}] = static_cast<int>(p.generators.size());
      b.gens.push_back(b.e_idx[{i, j}]);
      p.generators.push_back({symbol_name(g, t, g.name(b.rep)), t});
    }
  for (int i = 0; i < s; ++i)
    for (int j = s; j < b.r; ++j) {
      auto t = WhiteheadAuto::transvection(g, Letter(b.coords[i], 1),
                                           Letter(b.coords[j], 1));
      b.z_idx[{i, j - s}] = static_cast<int>(p.generators.size());
      b.gens.push_back(b.z_idx[{i, j - s}]);
      b.z_gens.push_back(b.z_idx[{i, j - s}]);
      p.generators.push_back({symbol_name(g, t, g.name(b.rep)), t});
    }

  std::string tag = "class " + g.name(b.rep);
  // GL(s,Z) relators
  push_checked(g, p, {{b.o_idx[0], 1}, {b.o_idx[0], 1}}, "gl", tag + " O1^2");
  if (s >= 2) {
    int e01 = b.e_idx[{0, 1}], e10 = b.e_idx[{1, 0}];
    SymWord weyl{{e01, 1}, {e10, -1}, {e01, 1}};
    // braid relation and the order-4 Weyl element
    SymWord braid = weyl;
    SymWord rhs_inv = sym_inverse({{e10, -1}, {e01, 1}, {e10, -1}});
    braid.insert(braid.end(), rhs_inv.begin(), rhs_inv.end());
    push_checked(g, p, braid, "gl", tag + " braid");
    SymWord pow4;
    for (int t = 0; t < 4; ++t) pow4.insert(pow4.end(), weyl.begin(), weyl.end());
    push_checked(g, p, pow4, "gl", tag + " weyl^4");
    // O1 action on the elementary matrices
    for (auto& [ij, ei] : b.e_idx) {
      SymWord w{{b.o_idx[0], 1}, {ei, 1}, {b.o_idx[0], 1}};
      if (ij.first == 0 || ij.second == 0)
        w.emplace_back(ei, 1);
      else
        w.emplace_back(ei, -1);
      push_checked(g, p, w, "gl", tag + " O1 conj");
    }
    // remaining sign matrices are conjugates of O1 by Weyl elements
    for (int i = 1; i < s; ++i) {
      int e0i = b.e_idx[{0, i}], ei0 = b.e_idx[{i, 0}];
      SymWord wi{{e0i, 1}, {ei0, -1}, {e0i, 1}};
      SymWord def{{b.o_idx[i], -1}};
      def.insert(def.end(), wi.begin(), wi.end());
      def.emplace_back(b.o_idx[0], 1);
      SymWord winv = sym_inverse(wi);
      def.insert(def.end(), winv.begin(), winv.end());
      push_checked(g, p, def, "gl", tag + " O" + std::to_string(i + 1) + " def");
    }
  }
  if (s >= 3) {
    for (auto& [ij, eij] : b.e_idx)
      for (auto& [kl, ekl] : b.e_idx) {
        if (ij == kl) continue;
        auto [i, j] = ij;
        auto [k, l] = kl;
        if (j != k && i != l) {
          if (ij < kl)
            push_checked(g, p, {{eij, 1}, {ekl, 1}, {eij, -1}, {ekl, -1}}, "gl",
                         tag + " steinberg comm");
        } else if (j == k && i != l) {
          push_checked(
              g, p,
              {{eij, 1}, {ekl, 1}, {eij, -1}, {ekl, -1}, {b.e_idx.at({i, l}), -1}},
              "gl", tag + " steinberg");
        }
      }
  }
  // the unipotent part is free abelian
  for (auto it = b.z_idx.begin(); it != b.z_idx.end(); ++it)
    for (auto jt = std::next(it); jt != b.z_idx.end(); ++jt)
      push_checked(g, p, {{it->second, 1}, {jt->second, 1}, {it->second, -1}, {jt->second, -1}},
                   "abelian", tag + " Z comm");
  // theta action of the diagonal part on the unipotent part
  for (int gi : b.gens) {
    if (std::find(b.z_gens.begin(), b.z_gens.end(), gi) != b.z_gens.end()) continue;
    for (int zi : b.z_gens) {
      const auto& hb = p.generators[gi].binding;
      EndoMap conj = compose_endo(
          g, compose_endo(g, hb.inverse().to_endo(), p.generators[zi].binding.to_endo()),
          hb.to_endo());
      SymWord w = class_factor_word(g, sp, b, conj);
      SymWord rel{{gi, -1}, {zi, 1}, {gi, 1}};
      SymWord winv = sym_inverse(w);
      rel.insert(rel.end(), winv.begin(), winv.end());
      push_checked(g, p, rel, "action", tag + " theta");
    }
  }
}

void build_free_block(const CommutationGraph& g, StKPresentation& sp, ClassBlock& b,
                      const EmitConfig& config) {
  Presentation& p = sp.pres;
  auto part = class_partition(g, b.rep);
  b.p = static_cast<int>(part.cls.size());
  b.q_minus_p = static_cast<int>(part.a_s.size());
  b.coords = part.cls;
  b.coords.insert(b.coords.end(), part.a_s.begin(), part.a_s.end());

  Presentation local = tietze_reduce(g, build_Rx(g, b.rep));
  std::vector<int> local_to_global(local.generators.size(), -1);
  for (size_t li = 0; li < local.generators.size(); ++li) {
    const auto& lg = local.generators[li];
    if (lg.binding.is_type1()) {
      bool inversion_like = lg.name.rfind("inv:", 0) == 0;
      if (!config.keep_perms && !inversion_like) continue;  // eliminated
      local_to_global[li] = static_cast<int>(p.generators.size());
      b.perm_gens.push_back(local_to_global[li]);
      b.gens.push_back(local_to_global[li]);
      p.generators.push_back(lg);
    } else {
      Letter a = lg.binding.multiplier();
      Letter l = letterset_remove(lg.binding.A(), a)[0];
      local_to_global[li] = static_cast<int>(p.generators.size());
      b.tau_idx[{l, a}] = local_to_global[li];
      b.gens.push_back(local_to_global[li]);
      p.generators.push_back(lg);
    }
  }
  // words for eliminated permutations: BFS over the signed permutation group
  if (!config.keep_perms && b.p >= 1) {
    // generator moves: single inversions and the R5 half-turns sigma_{v,w}
    struct Move {
      std::vector<Letter> table;
      SymWord word;
    };
    std::vector<Move> moves;
    for (int v : part.cls) {
      auto inv = WhiteheadAuto::inversion(g, v);
      SymWord w;
      for (int gi : b.perm_gens)
        if (p.generators[gi].binding.perm() == inv.perm()) w = {{gi, 1}};
      if (w.empty()) throw validation_error("missing inversion generator");
      moves.push_back({inv.perm(), w});
    }
    for (int v : part.cls)
      for (int wv : part.cls) {
        if (v == wv) continue;
        Letter a(v, 1), bb(wv, 1);
        auto sig = WhiteheadAuto::identity(g);
        auto tbl = sig.perm();
        tbl[a.code()] = bb.inverse();
        tbl[bb.inverse().code()] = a.inverse();
        tbl[a.inverse().code()] = bb;
        tbl[bb.code()] = a;
        // sigma_{a,b} = tau_{b,a} tau_{a^-1,b} tau_{b^-1,a}^-1, an R5 identity
        SymWord w{{b.tau_idx.at({bb, a}), 1},
                  {b.tau_idx.at({a.inverse(), bb}), 1},
                  {b.tau_idx.at({bb.inverse(), a}), -1}};
        if (sym_word_action(g, p, w) != WhiteheadAuto::type1(g, tbl).to_endo())
          throw validation_error("R5 expression of a class half-turn failed");
        moves.push_back({tbl, w});
      }
    auto identity_table = WhiteheadAuto::identity(g).perm();
    b.perm_words[identity_table] = {};
    std::deque<std::vector<Letter>> queue{identity_table};
    while (!queue.empty()) {
      auto cur = queue.front();
      queue.pop_front();
      const SymWord& cw = b.perm_words[cur];
      for (const auto& mv : moves) {
        std::vector<Letter> nxt(cur.size());
        for (size_t c = 0; c < cur.size(); ++c) nxt[c] = mv.table[cur[c].code()];
        if (b.perm_words.count(nxt)) continue;
        SymWord w = cw;
        w.insert(w.end(), mv.word.begin(), mv.word.end());
        b.perm_words[nxt] = w;
        queue.push_back(nxt);
      }
    }
  }

  std::string tag = "class " + g.name(b.rep);
  // the reduced R_x relators, rewritten into global symbols
  for (const auto& r : local.relators) {
    SymWord w;
    for (auto [li, exp] : r.word) {
      if (local_to_global[li] >= 0) {
        w.emplace_back(local_to_global[li], exp);
      } else {
        SymWord piece = b.perm_words.at(local.generators[li].binding.perm());
        if (exp < 0) piece = sym_inverse(piece);
        w.insert(w.end(), piece.begin(), piece.end());
      }
    }
    w = sym_free_reduce(std::move(w));
    if (w.empty()) continue;
    Relator nr;
    nr.word = std::move(w);
    nr.families = r.families;
    nr.note = r.note;
    if (!is_identity(sym_word_action(g, p, nr.word), g))
      throw validation_error("rewritten class relator fails verification");
    p.relators.push_back(std::move(nr));
  }

  // central part M(p, q-p)
  for (int i = 0; i < b.p; ++i)
    for (int j = 0; j < b.q_minus_p; ++j) {
      auto t = WhiteheadAuto::transvection(g, Letter(part.cls[i], 1),
                                           Letter(part.a_s[j], 1));
      b.z_idx[{i, j}] = static_cast<int>(p.generators.size());
      b.gens.push_back(b.z_idx[{i, j}]);
      b.z_gens.push_back(b.z_idx[{i, j}]);
      p.generators.push_back({symbol_name(g, t, g.name(b.rep)), t});
    }
  for (auto it = b.z_idx.begin(); it != b.z_idx.end(); ++it)
    for (auto jt = std::next(it); jt != b.z_idx.end(); ++jt)
      push_checked(g, p,
                   {{it->second, 1}, {jt->second, 1}, {it->second, -1}, {jt->second, -1}},
                   "abelian", tag + " Z comm");
  // conjugation action of the long-range part on the centre
  for (int gi : b.gens) {
    if (std::find(b.z_gens.begin(), b.z_gens.end(), gi) != b.z_gens.end()) continue;
    for (int zi : b.z_gens) {
      const auto& hb = p.generators[gi].binding;
      EndoMap conj = compose_endo(
          g, compose_endo(g, hb.inverse().to_endo(), p.generators[zi].binding.to_endo()),
          hb.to_endo());
      SymWord w = class_factor_word(g, sp, b, conj);
      SymWord rel{{gi, -1}, {zi, 1}, {gi, 1}};
      SymWord winv = sym_inverse(w);
      rel.insert(rel.end(), winv.begin(), winv.end());
      push_checked(g, p, rel, "action", tag + " central action");
    }
  }
}

}  // namespace

StKPresentation emit_presentation(const CommutationGraph& g, const EmitConfig& config) {
  AdmissibleLattice lat = build_lattice(g);
  StKPresentation sp;
  sp.h_K = lat.h_K;
  sp.express_depth = config.express_depth;

  for (int k = 0; k <= lat.h_K; ++k)
    for (int y : lat.level_transversal[k]) {
      ClassBlock b;
      b.rep = y;
      b.level = k;
      b.abelian = abelian_case(g, y);
      if (b.abelian)
        build_abelian_block(g, sp, b);
      else
        build_free_block(g, sp, b, config);
      std::ostringstream shape;
      if (b.abelian)
        shape << "GL(" << b.s << ",Z) x| M(" << b.s << "," << b.r - b.s << ")";
      else
        shape << "<Omega'_" << g.name(b.rep) << " | R'_" << g.name(b.rep) << "> x| M("
              << b.p << "," << b.q_minus_p << ")";
      b.shape = shape.str();
      sp.classes.push_back(std::move(b));
    }

  // direct product of the class factors inside each level
  for (size_t i = 0; i < sp.classes.size(); ++i)
    for (size_t j = i + 1; j < sp.classes.size(); ++j) {
      if (sp.classes[i].level != sp.classes[j].level) continue;
      for (int gi : sp.classes[i].gens)
        for (int gj : sp.classes[j].gens)
          push_checked(g, sp.pres, {{gi, 1}, {gj, 1}, {gi, -1}, {gj, -1}},
                       "level-commutator",
                       "level " + std::to_string(sp.classes[i].level));
    }

  // semidirect action: lower levels act on higher class factors
  for (const auto& upper : sp.classes)
    for (const auto& lower : sp.classes) {
      if (lower.level >= upper.level) continue;
      for (int ui : upper.gens)
        for (int li : lower.gens) {
          const auto& ub = sp.pres.generators[ui].binding;
          const auto& lb = sp.pres.generators[li].binding;
          EndoMap conj = compose_endo(
              g, compose_endo(g, lb.inverse().to_endo(), ub.to_endo()), lb.to_endo());
          SymWord w;
          if (conj == ub.to_endo())
            w = {{ui, 1}};
          else
            w = class_factor_word(g, sp, upper, conj);
          SymWord rel{{li, -1}, {ui, 1}, {li, 1}};
          SymWord winv = sym_inverse(w);
          rel.insert(rel.end(), winv.begin(), winv.end());
          push_checked(g, sp.pres, rel, "action",
                       "level " + std::to_string(upper.level) + " under level " +
                           std::to_string(lower.level));
        }
    }

  verify_presentation(g, sp.pres);
  return sp;
}

}  // namespace stk
