#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "stk/stabilizer.hpp"
#include "stk/whitehead.hpp"

namespace stk {

// A word over generator symbols: (generator index, exponent +-1).
using SymWord = std::vector<std::pair<int, int>>;

struct GenSymbol {
  std::string name;
  WhiteheadAuto binding;
};

struct Relator {
  SymWord word;
  std::set<std::string> families;  // contributing rule families
  std::string note;
};

struct Presentation {
  std::vector<GenSymbol> generators;
  std::vector<Relator> relators;
};

SymWord sym_inverse(const SymWord& w);
SymWord sym_free_reduce(SymWord w);
std::string sym_word_str(const Presentation& p, const SymWord& w);

EndoMap sym_word_action(const CommutationGraph& g, const Presentation& p,
                        const SymWord& w);
// Every relator must evaluate to the identity automorphism.
void verify_presentation(const CommutationGraph& g, const Presentation& p);

std::string symbol_name(const CommutationGraph& g, const WhiteheadAuto& w,
                        const std::string& class_tag);

// The Whitehead generators Omega_x with the defining relations R1x..R7x,
// R3*x and R4*x, every instance verified extensionally.
Presentation build_Rx(const CommutationGraph& g, int x);

// Tietze reduction onto inversions, elementary transvections with positive
// multiplier, and the letter permutations of the class: eliminates compound
// (A,a) via R2x and negative multipliers via R1x, then removes relators that
// are consequences of kept commutations, involution squares and conjugation
// rules.
Presentation tietze_reduce(const CommutationGraph& g, const Presentation& p);

struct EmitConfig {
  bool keep_perms = true;  // retain Type-1 class permutations as generators
  int express_depth = 8;
};

struct ClassBlock {
  int rep = -1;
  int level = 0;
  bool abelian = false;
  int r = 0, s = 0;          // abelian case: |a(x)|, |[x]|
  int p = 0, q_minus_p = 0;  // free case: |[x]|, |a_s(x)|
  std::string shape;
  std::vector<int> gens;    // global generator indices of this block
  std::vector<int> z_gens;  // the central/unipotent part, row-major
  VertexSet coords;         // matrix coordinates (abelian) or [x] then a_s

  std::map<std::pair<int, int>, int> e_idx;  // abelian: E_{ij} -> generator
  std::vector<int> o_idx;                    // abelian: O_i -> generator
  std::map<std::pair<int, int>, int> z_idx;  // Z_{ij} -> generator
  std::map<std::pair<Letter, Letter>, int> tau_idx;  // free: (letter, multiplier)
  std::vector<int> perm_gens;                        // free: Type-1 generators
  std::map<std::vector<Letter>, SymWord> perm_words; // free: eliminated perms
};

struct StKPresentation {
  Presentation pres;
  std::vector<ClassBlock> classes;  // ordered by (level, rep)
  int h_K = 0;
  int express_depth = 8;
};

// Full presentation of St(K) assembled bottom-up through the semidirect
// tower; every relator verified before emission.
StKPresentation emit_presentation(const CommutationGraph& g,
                                  const EmitConfig& config = {});

// Expression of a member of St_y^v as a word over the block's generators.
SymWord class_factor_word(const CommutationGraph& g, const StKPresentation& sp,
                          const ClassBlock& block, const EndoMap& phi);

}  // namespace stk
