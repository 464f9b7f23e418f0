#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "stk/graph.hpp"

namespace stk {

// A letter of L = X u X^-1. Total order: input vertex order, positive
// letter before its inverse; this is the order used by shortlex.
struct Letter {
  int16_t vertex = 0;
  int8_t sign = 1;  // +1 or -1

  Letter() = default;
  Letter(int v, int s) : vertex(static_cast<int16_t>(v)), sign(static_cast<int8_t>(s)) {}
  Letter inverse() const { return Letter(vertex, -sign); }
  int code() const { return 2 * vertex + (sign < 0 ? 1 : 0); }
  auto operator<=>(const Letter& o) const { return code() <=> o.code(); }
  bool operator==(const Letter& o) const = default;
};

using Letters = std::vector<Letter>;  // raw letter sequence (may be non-reduced)

// Geodesic, shortlex-least representative of an element of G_Gamma.
struct NormalWord {
  Letters letters;

  bool empty() const { return letters.empty(); }
  int length() const { return static_cast<int>(letters.size()); }
  auto operator<=>(const NormalWord& o) const = default;
};

// Cyclically minimal core plus the stripped conjugator:
// original = conjugator^-1 * core * conjugator.
struct CyclicWord {
  NormalWord core;
  NormalWord conjugator;
};

bool commute(const CommutationGraph& g, Letter a, Letter b);

// Geodesic reduction without canonical ordering (stack placement).
Letters reduce(const CommutationGraph& g, const Letters& w);
// Canonical form: reduce, then the lexicographically least shuffle.
NormalWord normal_form(const CommutationGraph& g, const Letters& w);
inline NormalWord normal_form(const CommutationGraph& g, const NormalWord& w) {
  return normal_form(g, w.letters);
}

NormalWord multiply(const CommutationGraph& g, const NormalWord& u, const NormalWord& v);
NormalWord inverse(const CommutationGraph& g, const NormalWord& u);
NormalWord conjugate(const CommutationGraph& g, const NormalWord& w, const NormalWord& by);
VertexSet support(const NormalWord& w);
int exponent_sum(const NormalWord& w, int vertex);

CyclicWord cyclic_reduce(const CommutationGraph& g, const NormalWord& w);
int conjugacy_length(const CommutationGraph& g, const NormalWord& w);
int tuple_conjugacy_length(const CommutationGraph& g, const std::vector<NormalWord>& tuple);

// Canonical conjugacy representative. Guaranteed faithful (equal outputs
// iff conjugate) for cores of length <= max_core; longer cores are rejected.
NormalWord conjugacy_canonical(const CommutationGraph& g, const NormalWord& w,
                               int max_core = 4);

// Word literal syntax: whitespace-separated letters `a` / `a^-1`.
NormalWord parse_word(const CommutationGraph& g, const std::string& text);
Letter parse_letter(const CommutationGraph& g, const std::string& token);
std::string letter_str(const CommutationGraph& g, Letter l);
std::string word_str(const CommutationGraph& g, const NormalWord& w);

}  // namespace stk
