#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stk/graph.hpp"
#include "stk/word.hpp"

namespace stk {

using LetterSet = std::vector<Letter>;  // sorted by Letter order, unique

LetterSet letters_of(const VertexSet& vs);           // both signs of each vertex
LetterSet letterset_union(const LetterSet& a, const LetterSet& b);
LetterSet letterset_intersect(const LetterSet& a, const LetterSet& b);
LetterSet letterset_difference(const LetterSet& a, const LetterSet& b);
bool letterset_contains(const LetterSet& s, Letter l);
bool letterset_subset(const LetterSet& a, const LetterSet& b);
LetterSet letterset_add(LetterSet s, Letter l);
LetterSet letterset_remove(LetterSet s, Letter l);

// Action of an endomorphism on X, given by the images of the generators.
struct EndoMap {
  std::vector<NormalWord> images;  // images[v] = image of generator v

  bool operator==(const EndoMap& o) const = default;
};

EndoMap identity_endo(const CommutationGraph& g);
bool is_identity(const EndoMap& e, const CommutationGraph& g);
NormalWord apply_endo(const CommutationGraph& g, const EndoMap& e, const NormalWord& w);
EndoMap compose_endo(const CommutationGraph& g, const EndoMap& first, const EndoMap& then);
bool is_homomorphism(const CommutationGraph& g, const EndoMap& e);

// A Whitehead automorphism: Type 1 is a letter permutation inducing a graph
// automorphism; Type 2 is the pair (A,a) encoding alpha_{C,a} tau_{T,a}.
class WhiteheadAuto {
public:
  enum class Kind { type1, type2 };

  static WhiteheadAuto identity(const CommutationGraph& g);
  // perm[l.code()] = image letter; must commute with inversion and induce a
  // graph automorphism.
  static WhiteheadAuto type1(const CommutationGraph& g, std::vector<Letter> perm);
  // Validates the (A,a) conditions and stores the (C,T,U) decomposition.
  static WhiteheadAuto type2(const CommutationGraph& g, const LetterSet& A, Letter a);
  // The inversion iota_x and elementary transvection tau_{u,v} (u -> uv).
  static WhiteheadAuto inversion(const CommutationGraph& g, int vertex);
  static WhiteheadAuto transvection(const CommutationGraph& g, Letter u, Letter v);

  Kind kind() const { return kind_; }
  bool is_type1() const { return kind_ == Kind::type1; }
  bool is_identity() const;
  const CommutationGraph& graph() const { return *g_; }

  Letter image(Letter l) const;            // Type 1 only
  const std::vector<Letter>& perm() const { return perm_; }
  const LetterSet& A() const { return A_; }
  Letter multiplier() const { return a_; }
  const VertexSet& C() const { return C_; }
  const LetterSet& T() const { return T_; }
  const VertexSet& U() const { return U_; }

  NormalWord letter_image(Letter l) const;
  NormalWord apply(const NormalWord& w) const;
  EndoMap to_endo() const;
  WhiteheadAuto inverse() const;

  bool is_long_range() const;
  bool is_short_range() const;

  // Extensional equality of the induced automorphisms.
  bool same_action(const WhiteheadAuto& o) const;

  std::string str() const;  // (A,a) or cycle notation, for diagnostics

private:
  WhiteheadAuto() = default;
  Kind kind_ = Kind::type1;
  const CommutationGraph* g_ = nullptr;
  std::vector<Letter> perm_;  // type 1
  LetterSet A_;               // type 2
  Letter a_;
  VertexSet C_;
  LetterSet T_;
  VertexSet U_;
};

// phi = (A_s, a) . (A_l + a, a): the unique short/long factorisation.
struct LongShortSplit {
  WhiteheadAuto short_part;  // identity when trivial
  WhiteheadAuto long_part;
};
LongShortSplit split_long_short(const WhiteheadAuto& phi);

enum class FamilyKind { Inv, Tr, LInn, OmegaX };

struct GeneratorFamily {
  FamilyKind kind;
  std::vector<WhiteheadAuto> members;
};

GeneratorFamily enumerate_family(const CommutationGraph& g, FamilyKind kind,
                                 std::optional<int> x = std::nullopt);

// Action of the ordered product fs[0] fs[1] ... (applied left to right).
EndoMap compose_to_map(const CommutationGraph& g, const std::vector<WhiteheadAuto>& fs);

std::vector<int> components_outside_star(const CommutationGraph& g, int vertex,
                                         std::vector<VertexSet>* comps);

}  // namespace stk
