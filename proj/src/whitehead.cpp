#include "stk/whitehead.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace stk {

LetterSet letters_of(const VertexSet& vs) {
  LetterSet out;
  for (int v : vs) {
    out.push_back(Letter(v, 1));
    out.push_back(Letter(v, -1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

LetterSet letterset_union(const LetterSet& a, const LetterSet& b) {
  LetterSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

LetterSet letterset_intersect(const LetterSet& a, const LetterSet& b) {
  LetterSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

LetterSet letterset_difference(const LetterSet& a, const LetterSet& b) {
  LetterSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool letterset_contains(const LetterSet& s, Letter l) {
  return std::binary_search(s.begin(), s.end(), l);
}

bool letterset_subset(const LetterSet& a, const LetterSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

LetterSet letterset_add(LetterSet s, Letter l) {
  if (!letterset_contains(s, l)) s.insert(std::lower_bound(s.begin(), s.end(), l), l);
  return s;
}

LetterSet letterset_remove(LetterSet s, Letter l) {
  auto it = std::lower_bound(s.begin(), s.end(), l);
  if (it != s.end() && *it == l) s.erase(it);
  return s;
}

EndoMap identity_endo(const CommutationGraph& g) {
  EndoMap e;
  e.images.resize(g.size());
  for (int v = 0; v < g.size(); ++v) e.images[v] = NormalWord{{Letter(v, 1)}};
  return e;
}

bool is_identity(const EndoMap& e, const CommutationGraph& g) {
  return e == identity_endo(g);
}

NormalWord apply_endo(const CommutationGraph& g, const EndoMap& e, const NormalWord& w) {
  Letters out;
  for (Letter l : w.letters) {
    const NormalWord& img = e.images[l.vertex];
    if (l.sign > 0) {
      out.insert(out.end(), img.letters.begin(), img.letters.end());
    } else {
      for (auto it = img.letters.rbegin(); it != img.letters.rend(); ++it)
        out.push_back(it->inverse());
    }
  }
  return normal_form(g, out);
}

EndoMap compose_endo(const CommutationGraph& g, const EndoMap& first, const EndoMap& then) {
  EndoMap out;
  out.images.resize(g.size());
  for (int v = 0; v < g.size(); ++v)
    out.images[v] = apply_endo(g, then, first.images[v]);
  return out;
}

bool is_homomorphism(const CommutationGraph& g, const EndoMap& e) {
  for (int u = 0; u < g.size(); ++u)
    for (int v : g.neighbors(u)) {
      if (v < u) continue;
      if (multiply(g, e.images[u], e.images[v]) != multiply(g, e.images[v], e.images[u]))
        return false;
    }
  return true;
}

WhiteheadAuto WhiteheadAuto::identity(const CommutationGraph& g) {
  std::vector<Letter> perm(2 * g.size());
  for (int v = 0; v < g.size(); ++v) {
    perm[Letter(v, 1).code()] = Letter(v, 1);
    perm[Letter(v, -1).code()] = Letter(v, -1);
  }
  WhiteheadAuto w;
  w.kind_ = Kind::type1;
  w.g_ = &g;
  w.perm_ = std::move(perm);
  return w;
}

WhiteheadAuto WhiteheadAuto::type1(const CommutationGraph& g, std::vector<Letter> perm) {
  if (perm.size() != static_cast<size_t>(2 * g.size()))
    throw validation_error("type1: permutation has wrong size");
  std::vector<bool> hit(2 * g.size(), false);
  for (int c = 0; c < 2 * g.size(); ++c) {
    Letter img = perm[c];
    if (img.vertex < 0 || img.vertex >= g.size())
      throw validation_error("type1: image letter out of range");
    if (hit[img.code()]) throw validation_error("type1: not a bijection");
    hit[img.code()] = true;
  }
  for (int v = 0; v < g.size(); ++v) {
    Letter img = perm[Letter(v, 1).code()];
    if (perm[Letter(v, -1).code()] != img.inverse())
      throw validation_error("type1: does not commute with inversion");
  }
  for (int u = 0; u < g.size(); ++u)
    for (int v = u + 1; v < g.size(); ++v) {
      int iu = perm[Letter(u, 1).code()].vertex;
      int iv = perm[Letter(v, 1).code()].vertex;
      if (g.adjacent(u, v) != g.adjacent(iu, iv))
        throw validation_error("type1: not a graph automorphism");
    }
  WhiteheadAuto w;
  w.kind_ = Kind::type1;
  w.g_ = &g;
  w.perm_ = std::move(perm);
  return w;
}

std::vector<int> components_outside_star(const CommutationGraph& g, int vertex,
                                         std::vector<VertexSet>* comps) {
  // component id per vertex, -1 inside st(vertex)
  VertexSet st = star(g, vertex);
  std::vector<int> comp(g.size(), -1);
  int next = 0;
  for (int v = 0; v < g.size(); ++v) {
    if (set_contains(st, v) || comp[v] >= 0) continue;
    std::vector<int> stack{v};
    comp[v] = next;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(u))
        if (!set_contains(st, w) && comp[w] < 0) {
          comp[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  if (comps) {
    comps->assign(next, {});
    for (int v = 0; v < g.size(); ++v)
      if (comp[v] >= 0) (*comps)[comp[v]].push_back(v);
  }
  return comp;
}

WhiteheadAuto WhiteheadAuto::type2(const CommutationGraph& g, const LetterSet& A, Letter a) {
  if (!letterset_contains(A, a)) throw validation_error("type2: a not in A");
  if (letterset_contains(A, a.inverse()))
    throw validation_error("type2: a^-1 in A");
  VertexSet lk_a = link(g, a.vertex);
  VertexSet st_a = star(g, a.vertex);

  VertexSet C, U;
  LetterSet T;
  for (int y = 0; y < g.size(); ++y) {
    if (y == a.vertex) continue;
    bool pos = letterset_contains(A, Letter(y, 1));
    bool neg = letterset_contains(A, Letter(y, -1));
    if (!pos && !neg) continue;
    if (pos && neg) {
      if (set_contains(lk_a, y))
        U.push_back(y);
      else
        C.push_back(y);
    } else {
      Letter t(y, pos ? 1 : -1);
      if (!subset_of(link(g, y), st_a))
        throw validation_error("type2: transvection condition fails for " +
                               g.name(y) + " with multiplier " + g.name(a.vertex));
      T.push_back(t);
    }
  }
  if (C.empty() && T.empty()) throw validation_error("type2: C and T both empty");
  // C must be a union of connected components of the graph minus st(a)
  std::vector<VertexSet> comps;
  components_outside_star(g, a.vertex, &comps);
  for (const auto& k : comps) {
    VertexSet meet = set_intersect(k, C);
    if (!meet.empty() && meet != k)
      throw validation_error("type2: C is not a union of components of graph minus st(" +
                             g.name(a.vertex) + ")");
  }

  WhiteheadAuto w;
  w.kind_ = Kind::type2;
  w.g_ = &g;
  w.A_ = A;
  w.a_ = a;
  w.C_ = std::move(C);
  w.T_ = std::move(T);
  w.U_ = std::move(U);
  return w;
}

WhiteheadAuto WhiteheadAuto::inversion(const CommutationGraph& g, int vertex) {
  auto w = identity(g);
  w.perm_[Letter(vertex, 1).code()] = Letter(vertex, -1);
  w.perm_[Letter(vertex, -1).code()] = Letter(vertex, 1);
  return w;
}

WhiteheadAuto WhiteheadAuto::transvection(const CommutationGraph& g, Letter u, Letter v) {
  if (u.vertex == v.vertex) throw validation_error("transvection: same vertex");
  return type2(g, LetterSet{std::min(u, v), std::max(u, v)}, v);
}

bool WhiteheadAuto::is_identity() const {
  if (kind_ != Kind::type1) return false;
  for (int c = 0; c < 2 * g_->size(); ++c)
    if (perm_[c].code() != c) return false;
  return true;
}

Letter WhiteheadAuto::image(Letter l) const { return perm_.at(l.code()); }

NormalWord WhiteheadAuto::letter_image(Letter l) const {
  if (kind_ == Kind::type1) return NormalWord{{perm_[l.code()]}};
  if (l.vertex == a_.vertex) return NormalWord{{l}};
  if (set_contains(C_, l.vertex))
    return normal_form(*g_, Letters{a_.inverse(), l, a_});
  if (letterset_contains(T_, l)) return normal_form(*g_, Letters{l, a_});
  if (letterset_contains(T_, l.inverse()))
    return normal_form(*g_, Letters{a_.inverse(), l});
  return NormalWord{{l}};
}

NormalWord WhiteheadAuto::apply(const NormalWord& w) const {
  Letters out;
  for (Letter l : w.letters) {
    NormalWord img = letter_image(l);
    out.insert(out.end(), img.letters.begin(), img.letters.end());
  }
  return normal_form(*g_, out);
}

EndoMap WhiteheadAuto::to_endo() const {
  EndoMap e;
  e.images.resize(g_->size());
  for (int v = 0; v < g_->size(); ++v) e.images[v] = letter_image(Letter(v, 1));
  return e;
}

WhiteheadAuto WhiteheadAuto::inverse() const {
  if (kind_ == Kind::type1) {
    std::vector<Letter> inv(perm_.size());
    for (int c = 0; c < static_cast<int>(perm_.size()); ++c) {
      Letter src(c / 2, c % 2 ? -1 : 1);
      inv[perm_[c].code()] = src;
    }
    return type1(*g_, std::move(inv));
  }
  // (A,a)^-1 = (A - a + a^-1, a^-1)
  return type2(*g_, letterset_add(letterset_remove(A_, a_), a_.inverse()), a_.inverse());
}

bool WhiteheadAuto::is_long_range() const {
  if (kind_ == Kind::type1) return true;
  // fixes every vertex of st(a); U letters are fixed anyway
  VertexSet st_a = star(*g_, a_.vertex);
  for (Letter t : T_)
    if (set_contains(st_a, t.vertex)) return false;
  return true;
}

bool WhiteheadAuto::is_short_range() const {
  if (kind_ == Kind::type1) return false;
  VertexSet st_a = star(*g_, a_.vertex);
  if (!C_.empty()) return false;
  for (Letter t : T_)
    if (!set_contains(st_a, t.vertex)) return false;
  return true;
}

bool WhiteheadAuto::same_action(const WhiteheadAuto& o) const {
  return to_endo() == o.to_endo();
}

std::string WhiteheadAuto::str() const {
  std::ostringstream out;
  if (kind_ == Kind::type1) {
    if (is_identity()) return "id";
    out << "perm";
    std::vector<bool> done(perm_.size(), false);
    for (int c = 0; c < static_cast<int>(perm_.size()); ++c) {
      if (done[c] || perm_[c].code() == c) continue;
      out << " (";
      int cur = c;
      bool first = true;
      while (!done[cur]) {
        done[cur] = true;
        if (!first) out << " ";
        out << letter_str(*g_, Letter(cur / 2, cur % 2 ? -1 : 1));
        first = false;
        cur = perm_[cur].code();
      }
      out << ")";
    }
  } else {
    out << "({";
    for (size_t i = 0; i < A_.size(); ++i) {
      if (i) out << ",";
      out << letter_str(*g_, A_[i]);
    }
    out << "}," << letter_str(*g_, a_) << ")";
  }
  return out.str();
}

LongShortSplit split_long_short(const WhiteheadAuto& phi) {
  const CommutationGraph& g = phi.graph();
  if (phi.is_type1())
    return LongShortSplit{WhiteheadAuto::identity(g), phi};
  LetterSet st_a = letters_of(star(g, phi.multiplier().vertex));
  LetterSet As = letterset_intersect(phi.A(), st_a);
  LetterSet Al = letterset_difference(phi.A(), As);
  LongShortSplit out{WhiteheadAuto::identity(g), WhiteheadAuto::identity(g)};
  // As always contains a; it yields a nontrivial factor iff it has a T part
  if (As.size() > 1) {
    bool trivial = true;
    for (Letter l : As)
      if (l != phi.multiplier() && !letterset_contains(As, l.inverse())) trivial = false;
    if (!trivial) out.short_part = WhiteheadAuto::type2(g, As, phi.multiplier());
  }
  if (!Al.empty())
    out.long_part = WhiteheadAuto::type2(g, letterset_add(Al, phi.multiplier()),
                                         phi.multiplier());
  return out;
}

static void enumerate_type1_class(const CommutationGraph& g, const VertexSet& cls,
                                  std::vector<WhiteheadAuto>* out) {
  int p = static_cast<int>(cls.size());
  std::vector<int> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> perm = idx;
  do {
    for (int mask = 0; mask < (1 << p); ++mask) {
      auto w = WhiteheadAuto::identity(g);
      bool is_id = true;
      std::vector<Letter> table = w.perm();
      for (int i = 0; i < p; ++i) {
        Letter img(cls[perm[i]], (mask >> i) & 1 ? -1 : 1);
        table[Letter(cls[i], 1).code()] = img;
        table[Letter(cls[i], -1).code()] = img.inverse();
        if (img != Letter(cls[i], 1)) is_id = false;
      }
      if (is_id) continue;
      out->push_back(WhiteheadAuto::type1(g, std::move(table)));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

GeneratorFamily enumerate_family(const CommutationGraph& g, FamilyKind kind,
                                 std::optional<int> x) {
  GeneratorFamily fam;
  fam.kind = kind;
  switch (kind) {
    case FamilyKind::Inv:
      for (int v = 0; v < g.size(); ++v)
        fam.members.push_back(WhiteheadAuto::inversion(g, v));
      break;
    case FamilyKind::Tr:
      for (int uv = 0; uv < g.size(); ++uv)
        for (int vv = 0; vv < g.size(); ++vv) {
          if (uv == vv || !subset_of(link(g, uv), star(g, vv))) continue;
          for (int us : {1, -1})
            for (int ss : {1, -1})
              fam.members.push_back(
                  WhiteheadAuto::transvection(g, Letter(uv, us), Letter(vv, ss)));
        }
      break;
    case FamilyKind::LInn:
      for (int v = 0; v < g.size(); ++v) {
        std::vector<VertexSet> comps;
        components_outside_star(g, v, &comps);
        for (const auto& k : comps)
          for (int s : {1, -1}) {
            Letter a(v, s);
            fam.members.push_back(
                WhiteheadAuto::type2(g, letterset_add(letters_of(k), a), a));
          }
      }
      break;
    case FamilyKind::OmegaX: {
      if (!x) throw validation_error("OmegaX requires a class vertex");
      if (abelian_case(g, *x))
        throw validation_error("OmegaX undefined for an abelian-case class");
      auto part = class_partition(g, *x);
      enumerate_type1_class(g, part.cls, &fam.members);
      LetterSet clsL = letters_of(part.cls);
      LetterSet mults = letterset_union(clsL, letters_of(part.a_out));
      for (Letter m : mults) {
        LetterSet pool = letterset_remove(letterset_remove(clsL, m), m.inverse());
        int n = static_cast<int>(pool.size());
        for (int mask = 1; mask < (1 << n); ++mask) {
          LetterSet A{m};
          for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) A = letterset_add(A, pool[i]);
          fam.members.push_back(WhiteheadAuto::type2(g, A, m));
        }
      }
      break;
    }
  }
  // dedupe by action
  std::vector<WhiteheadAuto> unique;
  std::vector<EndoMap> keys;
  for (const auto& m : fam.members) {
    EndoMap k = m.to_endo();
    bool dup = false;
    for (const auto& seen : keys)
      if (seen == k) {
        dup = true;
        break;
      }
    if (!dup) {
      keys.push_back(std::move(k));
      unique.push_back(m);
    }
  }
  fam.members = std::move(unique);
  return fam;
}

EndoMap compose_to_map(const CommutationGraph& g, const std::vector<WhiteheadAuto>& fs) {
  EndoMap e = identity_endo(g);
  for (const auto& f : fs) e = compose_endo(g, e, f.to_endo());
  return e;
}

}  // namespace stk
