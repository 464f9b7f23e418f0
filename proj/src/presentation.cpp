#include "stk/presentation.hpp"

#include <algorithm>
#include <sstream>

namespace stk {

SymWord sym_inverse(const SymWord& w) {
  SymWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.emplace_back(it->first, -it->second);
  return out;
}

SymWord sym_free_reduce(SymWord w) {
  SymWord out;
  for (auto& le : w) {
    if (!out.empty() && out.back().first == le.first &&
        out.back().second == -le.second)
      out.pop_back();
    else
      out.push_back(le);
  }
  return out;
}

std::string sym_word_str(const Presentation& p, const SymWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += " ";
    s += p.generators[w[i].first].name;
    if (w[i].second < 0) s += "^-1";
  }
  return s;
}

EndoMap sym_word_action(const CommutationGraph& g, const Presentation& p,
                        const SymWord& w) {
  EndoMap e = identity_endo(g);
  for (auto [gi, exp] : w) {
    const WhiteheadAuto& b = p.generators[gi].binding;
    e = compose_endo(g, e, exp > 0 ? b.to_endo() : b.inverse().to_endo());
  }
  return e;
}

void verify_presentation(const CommutationGraph& g, const Presentation& p) {
  for (const auto& r : p.relators)
    if (!is_identity(sym_word_action(g, p, r.word), g)) {
      std::string fams;
      for (const auto& f : r.families) fams += f + " ";
      throw validation_error("relator does not evaluate to the identity [" + fams +
                             "]: " + sym_word_str(p, r.word));
    }
}

std::string symbol_name(const CommutationGraph& g, const WhiteheadAuto& w,
                        const std::string& class_tag) {
  if (w.is_type1()) {
    // single inversion gets the Inv name
    int moved = -1;
    bool inv_only = true;
    for (int v = 0; v < g.size() && inv_only; ++v) {
      Letter img = w.image(Letter(v, 1));
      if (img == Letter(v, 1)) continue;
      if (img == Letter(v, -1) && moved < 0)
        moved = v;
      else
        inv_only = false;
    }
    if (inv_only && moved >= 0) return "inv:" + g.name(moved);
    // cycle form
    std::string s = "perm:" + class_tag + ":";
    std::vector<bool> done(2 * g.size(), false);
    for (int c = 0; c < 2 * g.size(); ++c) {
      if (done[c] || w.perm()[c].code() == c) continue;
      s += "(";
      int cur = c;
      bool first = true;
      while (!done[cur]) {
        done[cur] = true;
        if (!first) s += " ";
        s += letter_str(g, Letter(cur / 2, cur % 2 ? -1 : 1));
        first = false;
        cur = w.perm()[cur].code();
      }
      s += ")";
    }
    return s;
  }
  LetterSet rest = letterset_remove(w.A(), w.multiplier());
  if (rest.size() == 1)
    return "tau:" + letter_str(g, rest[0]) + ":" + letter_str(g, w.multiplier());
  std::string s = "wh:{";
  for (size_t i = 0; i < w.A().size(); ++i) {
    if (i) s += ",";
    s += letter_str(g, w.A()[i]);
  }
  s += "}:" + letter_str(g, w.multiplier());
  return s;
}

namespace {

struct OmegaIndex {
  std::map<std::pair<std::vector<Letter>, Letter>, int> type2;  // (A, a) -> idx
  std::map<std::vector<Letter>, int> type1;                     // perm table -> idx

  int find2(const LetterSet& A, Letter a) const {
    auto it = type2.find({A, a});
    if (it == type2.end())
      throw validation_error("relation references a generator outside Omega_x");
    return it->second;
  }
  int find1(const std::vector<Letter>& perm) const {
    auto it = type1.find(perm);
    if (it == type1.end())
      throw validation_error("relation references a Type 1 map outside Omega_x");
    return it->second;
  }
};

Letter apply_perm(const WhiteheadAuto& sigma, Letter l) { return sigma.image(l); }

LetterSet apply_perm_set(const WhiteheadAuto& sigma, const LetterSet& s) {
  LetterSet out;
  for (Letter l : s) out.push_back(apply_perm(sigma, l));
  std::sort(out.begin(), out.end());
  return out;
}

void add_relator(const CommutationGraph& g, Presentation& p, SymWord word,
                 const std::string& family, const std::string& note) {
  word = sym_free_reduce(std::move(word));
  if (word.empty()) return;
  if (!is_identity(sym_word_action(g, p, word), g))
    throw validation_error("relation instance fails extensional check [" + family +
                           "] " + note + ": " + sym_word_str(p, word));
  Relator r;
  r.word = std::move(word);
  r.families = {family};
  r.note = note;
  p.relators.push_back(std::move(r));
}

}  // namespace

Presentation build_Rx(const CommutationGraph& g, int x) {
  if (abelian_case(g, x)) throw validation_error("build_Rx: abelian-case class");
  GeneratorFamily omega = enumerate_family(g, FamilyKind::OmegaX, x);
  Presentation p;
  OmegaIndex index;
  std::string tag = g.name(sim_class(g, x).front());
  for (const auto& m : omega.members) {
    int idx = static_cast<int>(p.generators.size());
    if (m.is_type1())
      index.type1[m.perm()] = idx;
    else
      index.type2[{m.A(), m.multiplier()}] = idx;
    p.generators.push_back({symbol_name(g, m, tag), m});
  }

  std::vector<int> t1, t2;
  for (int i = 0; i < static_cast<int>(omega.members.size()); ++i)
    (omega.members[i].is_type1() ? t1 : t2).push_back(i);

  LetterSet clsL = letters_of(sim_class(g, x));

  // R1x: (A,a) (A-a+a^-1, a^-1) = 1
  for (int i : t2) {
    const auto& m = omega.members[i];
    LetterSet Ainv = letterset_add(letterset_remove(m.A(), m.multiplier()),
                                   m.multiplier().inverse());
    int j = index.find2(Ainv, m.multiplier().inverse());
    add_relator(g, p, {{i, 1}, {j, 1}}, "R1x", m.str());
  }

  // R2x: (A,a)(B,a) = (A u B, a) when A n B = {a}
  for (int i : t2)
    for (int j : t2) {
      const auto& mi = omega.members[i];
      const auto& mj = omega.members[j];
      if (i == j || mi.multiplier() != mj.multiplier()) continue;
      LetterSet meet = letterset_intersect(mi.A(), mj.A());
      if (meet != LetterSet{mi.multiplier()}) continue;
      int k = index.find2(letterset_union(mi.A(), mj.A()), mi.multiplier());
      add_relator(g, p, {{i, 1}, {j, 1}, {k, -1}}, "R2x", mi.str() + " " + mj.str());
    }

  // R3x / R3*x / R4x / R4*x: conjugation rules for pairs of Type 2 maps
  for (int ai : t2)
    for (int bi : t2) {
      if (ai == bi) continue;
      const auto& A = omega.members[ai];
      const auto& B = omega.members[bi];
      Letter a = A.multiplier(), b = B.multiplier();
      bool ainv_in_B = letterset_contains(B.A(), a.inverse());
      bool binv_in_A = letterset_contains(A.A(), b.inverse());
      bool b_in_A = letterset_contains(A.A(), b);
      bool disjoint = letterset_intersect(A.A(), B.A()).empty();
      bool a_lk_b = a.vertex != b.vertex && g.adjacent(a.vertex, b.vertex);
      bool A_sub_B = letterset_subset(A.A(), B.A());
      std::string note = A.str() + " " + B.str();
      if (!ainv_in_B && !binv_in_A && (disjoint || a_lk_b)) {
        add_relator(g, p, {{bi, -1}, {ai, 1}, {bi, 1}, {ai, -1}},
                    disjoint ? "R3x(a)" : "R3x(b)", note);
      }
      if (ainv_in_B && !b_in_A && A_sub_B) {
        add_relator(g, p, {{bi, -1}, {ai, 1}, {bi, 1}, {ai, -1}}, "R3*x", note);
      }
      if (!ainv_in_B && binv_in_A && disjoint) {
        LetterSet S = letterset_remove(letterset_union(A.A(), B.A()), b);
        int k = index.find2(S, a);
        add_relator(g, p, {{bi, -1}, {ai, 1}, {bi, 1}, {k, -1}}, "R4x", note);
      }
      if (ainv_in_B && b_in_A && A_sub_B) {
        LetterSet S = letterset_add(letterset_difference(B.A(), A.A()), b.inverse());
        int k = index.find2(letterset_add(S, a.inverse()), a.inverse());
        add_relator(g, p, {{bi, -1}, {ai, 1}, {bi, 1}, {k, -1}}, "R4*x", note);
      }
    }

  // R5x: (A,a)(A-a+a^-1,b) = sigma_{a,b} (A-b+b^-1,a), a,b class letters, b in A
  for (int ai : t2) {
    const auto& A = omega.members[ai];
    Letter a = A.multiplier();
    if (!letterset_contains(clsL, a)) continue;
    for (Letter b : A.A()) {
      if (b == a || b.vertex == a.vertex) continue;
      if (!letterset_contains(clsL, b)) continue;
      if (letterset_contains(A.A(), b.inverse())) continue;
      LetterSet A2 = letterset_add(letterset_remove(A.A(), a), a.inverse());
      int i2 = index.find2(A2, b);
      LetterSet A3 = letterset_add(letterset_remove(A.A(), b), b.inverse());
      int i3 = index.find2(A3, a);
      // sigma_{a,b}: the 4-cycle (a, b^-1, a^-1, b)
      auto sig = WhiteheadAuto::identity(g);
      std::vector<Letter> tbl = sig.perm();
      tbl[a.code()] = b.inverse();
      tbl[b.inverse().code()] = a.inverse();
      tbl[a.inverse().code()] = b;
      tbl[b.code()] = a;
      int si = index.find1(tbl);
      add_relator(g, p, {{ai, 1}, {i2, 1}, {i3, -1}, {si, -1}}, "R5x",
                  A.str() + " b=" + letter_str(g, b));
    }
  }

  // R6x: sigma^-1 (A,a) sigma = (A sigma, a sigma)
  for (int si : t1)
    for (int ai : t2) {
      const auto& S = omega.members[si];
      const auto& A = omega.members[ai];
      int k = index.find2(apply_perm_set(S, A.A()), apply_perm(S, A.multiplier()));
      add_relator(g, p, {{si, -1}, {ai, 1}, {si, 1}, {k, -1}}, "R6x",
                  S.str() + " " + A.str());
    }

  // R7x: multiplication table of the Type 1 members
  for (int si : t1)
    for (int ti : t1) {
      const auto& S = omega.members[si];
      const auto& T = omega.members[ti];
      std::vector<Letter> prod(2 * g.size());
      for (int c = 0; c < 2 * g.size(); ++c)
        prod[c] = T.image(S.perm()[c]);
      bool is_id = true;
      for (int c = 0; c < 2 * g.size(); ++c)
        if (prod[c].code() != c) is_id = false;
      SymWord w{{si, 1}, {ti, 1}};
      if (!is_id) w.emplace_back(index.find1(prod), -1);
      add_relator(g, p, w, "R7x", S.str() + " " + T.str());
    }

  // drop exact duplicate words
  std::set<SymWord> seen;
  std::vector<Relator> unique;
  for (auto& r : p.relators)
    if (seen.insert(r.word).second) unique.push_back(std::move(r));
  p.relators = std::move(unique);
  return p;
}

namespace {

// Canonical form of a cyclic word up to rotation and inversion, with
// exponents of involution generators normalised to +1.
SymWord canonical_cyclic(SymWord w, const std::vector<bool>& involution) {
  for (auto& le : w)
    if (involution[le.first]) le.second = 1;
  if (w.empty()) return w;
  SymWord best;
  auto consider = [&](SymWord cand) {
    for (size_t r = 0; r < cand.size(); ++r) {
      SymWord rot(cand.begin() + r, cand.end());
      rot.insert(rot.end(), cand.begin(), cand.begin() + r);
      if (best.empty() || rot < best) best = rot;
    }
  };
  auto key = [&](const SymWord& c) {
    SymWord k = c;
    for (auto& le : k)
      if (involution[le.first]) le.second = 1;
    return k;
  };
  consider(key(w));
  consider(key(sym_inverse(w)));
  return best;
}

struct ConjRules {
  // per involution generator: letter -> letter map (by generator index)
  std::map<int, std::map<int, int>> rules;

  bool rewrite(SymWord& w) const {
    for (size_t i = 0; i < w.size(); ++i) {
      if (w[i].second != 1) continue;
      auto rit = rules.find(w[i].first);
      if (rit == rules.end()) continue;
      for (size_t j = i + 1; j < w.size(); ++j) {
        if (w[j].first == w[i].first && w[j].second == 1) {
          // sigma W sigma with every letter of W conjugatable
          SymWord mid;
          bool ok = true;
          for (size_t k = i + 1; k < j && ok; ++k) {
            auto mit = rit->second.find(w[k].first);
            if (mit == rit->second.end())
              ok = false;
            else
              mid.emplace_back(mit->second, w[k].second);
          }
          if (!ok) break;
          SymWord next(w.begin(), w.begin() + i);
          next.insert(next.end(), mid.begin(), mid.end());
          next.insert(next.end(), w.begin() + j + 1, w.end());
          w = sym_free_reduce(next);
          return true;
        }
        if (rit->second.find(w[j].first) == rit->second.end()) break;
      }
    }
    return false;
  }
};

// Reduce a symbol word in the trace monoid defined by the known commuting
// pairs; empty result means the relator follows from those commutations.
SymWord trace_reduce(const SymWord& w, const std::set<std::pair<int, int>>& edges) {
  SymWord out;
  for (auto le : w) {
    bool cancelled = false;
    for (int j = static_cast<int>(out.size()) - 1; j >= 0; --j) {
      if (out[j].first == le.first) {
        if (out[j].second == -le.second) {
          out.erase(out.begin() + j);
          cancelled = true;
        }
        break;
      }
      int a = std::min(out[j].first, le.first), b = std::max(out[j].first, le.first);
      if (!edges.count({a, b})) break;
    }
    if (!cancelled) out.push_back(le);
  }
  return out;
}

}  // namespace

Presentation tietze_reduce(const CommutationGraph& g, const Presentation& p) {
  int n = static_cast<int>(p.generators.size());
  // substitution per generator: kept generators map to themselves
  std::vector<SymWord> subst(n);
  std::vector<bool> kept(n, false);
  std::map<std::pair<std::vector<Letter>, Letter>, int> by_shape;
  for (int i = 0; i < n; ++i) {
    const auto& b = p.generators[i].binding;
    if (!b.is_type1()) by_shape[{b.A(), b.multiplier()}] = i;
  }
  for (int i = 0; i < n; ++i) {
    const auto& b = p.generators[i].binding;
    if (b.is_type1()) {
      kept[i] = true;
      subst[i] = {{i, 1}};
      continue;
    }
    Letter a = b.multiplier();
    LetterSet rest = letterset_remove(b.A(), a);
    if (rest.size() == 1 && a.sign > 0) {
      kept[i] = true;
      subst[i] = {{i, 1}};
      continue;
    }
    // split into elementaries via R2x, then flip negative multipliers via R1x
    SymWord w;
    for (Letter l : rest) {
      if (a.sign > 0) {
        auto it = by_shape.find({LetterSet{std::min(l, a), std::max(l, a)}, a});
        if (it == by_shape.end())
          throw validation_error("tietze_reduce: missing elementary generator");
        w.emplace_back(it->second, 1);
      } else {
        Letter ap = a.inverse();
        auto it = by_shape.find({LetterSet{std::min(l, ap), std::max(l, ap)}, ap});
        if (it == by_shape.end())
          throw validation_error("tietze_reduce: missing elementary generator");
        w.emplace_back(it->second, -1);
      }
    }
    subst[i] = w;
  }

  // keep original indices for kept generators, renumber at the end
  Presentation out;
  std::vector<int> remap(n, -1);
  for (int i = 0; i < n; ++i)
    if (kept[i]) {
      remap[i] = static_cast<int>(out.generators.size());
      out.generators.push_back(p.generators[i]);
    }

  std::vector<bool> involution(out.generators.size(), false);
  for (size_t i = 0; i < out.generators.size(); ++i) {
    const auto& b = out.generators[i].binding;
    if (b.is_type1())
      involution[i] =
          !b.is_identity() && compose_to_map(g, {b, b}) == identity_endo(g);
  }

  // rewrite all relators into the kept alphabet
  struct Candidate {
    SymWord word;
    std::set<std::string> families;
    std::string note;
  };
  std::vector<Candidate> cands;
  for (const auto& r : p.relators) {
    SymWord w;
    for (auto [gi, exp] : r.word) {
      SymWord piece = subst[gi];
      if (exp < 0) piece = sym_inverse(piece);
      w.insert(w.end(), piece.begin(), piece.end());
    }
    for (auto& le : w) le.first = remap[le.first];
    w = sym_free_reduce(std::move(w));
    if (w.empty()) continue;
    cands.push_back({canonical_cyclic(std::move(w), involution), r.families, r.note});
  }

  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return std::make_pair(a.word.size(), a.word) <
           std::make_pair(b.word.size(), b.word);
  });

  // merge duplicates, unioning family provenance
  std::vector<Candidate> merged;
  for (auto& c : cands) {
    if (!merged.empty() && merged.back().word == c.word) {
      merged.back().families.insert(c.families.begin(), c.families.end());
      continue;
    }
    merged.push_back(std::move(c));
  }

  // drop relators derivable from kept commutations and conjugation rules
  std::set<std::pair<int, int>> comm_edges;
  ConjRules conj;
  auto derivable = [&](const SymWord& w0) {
    for (size_t r = 0; r < w0.size(); ++r) {
      SymWord w(w0.begin() + r, w0.end());
      w.insert(w.end(), w0.begin(), w0.begin() + r);
      while (true) {
        if (conj.rewrite(w)) continue;
        SymWord t = trace_reduce(w, comm_edges);
        if (t.size() < w.size()) {
          w = std::move(t);
          continue;
        }
        break;
      }
      if (w.empty()) return true;
    }
    return false;
  };
  for (auto& c : merged) {
    if (derivable(c.word)) continue;
    Relator r;
    r.word = c.word;
    r.families = c.families;
    r.note = c.note;
    out.relators.push_back(std::move(r));
    // learn commutations and involution-conjugation rules from kept relators
    const SymWord& w = c.word;
    if (w.size() == 4 && w[0].first == w[2].first && w[1].first == w[3].first &&
        w[0].first != w[1].first) {
      int u = w[0].first, v = w[1].first;
      bool u_pair = involution[u] || (w[0].second == -w[2].second);
      bool v_pair = involution[v] || (w[1].second == -w[3].second);
      if (u_pair && v_pair) {
        comm_edges.insert({std::min(u, v), std::max(u, v)});
        if (involution[u]) conj.rules[u][v] = v;
        if (involution[v]) conj.rules[v][u] = u;
      }
    } else if (w.size() == 4 && w[0].first == w[2].first &&
               involution[w[0].first] && w[1].first != w[0].first &&
               w[3].first != w[0].first && w[1].first != w[3].first &&
               w[1].second == -w[3].second) {
      // sigma a sigma b^-1 = 1: conjugation by sigma swaps a and b
      conj.rules[w[0].first][w[1].first] = w[3].first;
      conj.rules[w[0].first][w[3].first] = w[1].first;
    }
  }
  verify_presentation(g, out);
  return out;
}

}  // namespace stk
