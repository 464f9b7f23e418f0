#include "stk/word.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace stk {

bool commute(const CommutationGraph& g, Letter a, Letter b) {
  if (a.vertex == b.vertex) return true;
  return g.adjacent(a.vertex, b.vertex);
}

// Stack placement: append letters one at a time; a new letter cancels the
// rightmost inverse it can be shuffled against. A letter of the same vertex
// (either sign) blocks the scan, as does any non-adjacent vertex.
Letters reduce(const CommutationGraph& g, const Letters& w) {
  Letters out;
  for (Letter l : w) {
    bool cancelled = false;
    for (int j = static_cast<int>(out.size()) - 1; j >= 0; --j) {
      if (out[j].vertex == l.vertex) {
        if (out[j].sign != l.sign) {
          out.erase(out.begin() + j);
          cancelled = true;
        }
        break;
      }
      if (!g.adjacent(out[j].vertex, l.vertex)) break;
    }
    if (!cancelled) out.push_back(l);
  }
  return out;
}

// Lexicographically least member of the trace class of a reduced word:
// repeatedly emit the least letter that can be shuffled to the front.
static Letters lex_least(const CommutationGraph& g, Letters w) {
  Letters out;
  out.reserve(w.size());
  while (!w.empty()) {
    int best = -1;
    for (size_t i = 0; i < w.size(); ++i) {
      bool movable = true;
      for (size_t j = 0; j < i && movable; ++j) {
        if (w[j].vertex == w[i].vertex || !g.adjacent(w[j].vertex, w[i].vertex))
          movable = false;
      }
      if (movable && (best < 0 || w[i] < w[best])) best = static_cast<int>(i);
    }
    out.push_back(w[best]);
    w.erase(w.begin() + best);
  }
  return out;
}

NormalWord normal_form(const CommutationGraph& g, const Letters& w) {
  return NormalWord{lex_least(g, reduce(g, w))};
}

NormalWord multiply(const CommutationGraph& g, const NormalWord& u, const NormalWord& v) {
  Letters cat = u.letters;
  cat.insert(cat.end(), v.letters.begin(), v.letters.end());
  return normal_form(g, cat);
}

NormalWord inverse(const CommutationGraph& g, const NormalWord& u) {
  Letters inv(u.letters.rbegin(), u.letters.rend());
  for (Letter& l : inv) l = l.inverse();
  return normal_form(g, inv);
}

NormalWord conjugate(const CommutationGraph& g, const NormalWord& w, const NormalWord& by) {
  return multiply(g, multiply(g, inverse(g, by), w), by);
}

VertexSet support(const NormalWord& w) {
  std::set<int> s;
  for (Letter l : w.letters) s.insert(l.vertex);
  return VertexSet(s.begin(), s.end());
}

int exponent_sum(const NormalWord& w, int vertex) {
  int total = 0;
  for (Letter l : w.letters)
    if (l.vertex == vertex) total += l.sign;
  return total;
}

// One cyclic-reduction step: find a letter that is both initial and, with
// opposite sign, final in the trace; conjugating it away shortens by 2.
static bool cyclic_step(const CommutationGraph& g, NormalWord& w, NormalWord& conj) {
  const Letters& ls = w.letters;
  int n = w.length();
  for (int i = 0; i < n; ++i) {
    bool initial = true;
    for (int j = 0; j < i && initial; ++j)
      if (ls[j].vertex == ls[i].vertex || !g.adjacent(ls[j].vertex, ls[i].vertex))
        initial = false;
    if (!initial) continue;
    for (int k = n - 1; k > i; --k) {
      if (ls[k].vertex == ls[i].vertex) {
        if (ls[k].sign != ls[i].sign) {
          // w = l . u . l^-1 with l = ls[i]; replace w by u, fold l into the
          // conjugator: w_old = conj_{l^-1}(u).
          Letters u;
          for (int j = 0; j < n; ++j)
            if (j != i && j != k) u.push_back(ls[j]);
          Letter l = ls[i];
          w = normal_form(g, u);
          conj = multiply(g, NormalWord{{l.inverse()}}, conj);
          return true;
        }
        break;
      }
      if (!g.adjacent(ls[k].vertex, ls[i].vertex)) break;
    }
  }
  return false;
}

CyclicWord cyclic_reduce(const CommutationGraph& g, const NormalWord& w) {
  CyclicWord out;
  out.core = normal_form(g, w.letters);
  out.conjugator = NormalWord{};
  while (cyclic_step(g, out.core, out.conjugator)) {
  }
  return out;
}

int conjugacy_length(const CommutationGraph& g, const NormalWord& w) {
  return cyclic_reduce(g, w).core.length();
}

int tuple_conjugacy_length(const CommutationGraph& g, const std::vector<NormalWord>& tuple) {
  int total = 0;
  for (const auto& w : tuple) total += conjugacy_length(g, w);
  return total;
}

// Closure of the cyclically minimal core under single-letter conjugations
// that preserve length; the shortlex-least member is canonical.
NormalWord conjugacy_canonical(const CommutationGraph& g, const NormalWord& w, int max_core) {
  NormalWord core = cyclic_reduce(g, w).core;
  if (core.length() > max_core)
    throw bound_error("conjugacy_canonical: core length " + std::to_string(core.length()) +
                      " exceeds bound " + std::to_string(max_core));
  std::set<NormalWord> seen{core};
  std::vector<NormalWord> queue{core};
  NormalWord best = core;
  while (!queue.empty()) {
    NormalWord cur = queue.back();
    queue.pop_back();
    if (std::make_pair(cur.length(), cur.letters) <
        std::make_pair(best.length(), best.letters))
      best = cur;
    for (Letter l : cur.letters) {
      NormalWord nxt = conjugate(g, cur, NormalWord{{l}});
      if (nxt.length() != cur.length()) continue;
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  }
  return best;
}

Letter parse_letter(const CommutationGraph& g, const std::string& token) {
  std::string base = token;
  int sign = 1;
  auto caret = token.find('^');
  if (caret != std::string::npos) {
    base = token.substr(0, caret);
    std::string exp = token.substr(caret + 1);
    if (exp != "-1" && exp != "1")
      throw parse_error("bad letter exponent: " + token);
    if (exp == "-1") sign = -1;
  }
  return Letter(g.index_of(base), sign);
}

NormalWord parse_word(const CommutationGraph& g, const std::string& text) {
  Letters ls;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) ls.push_back(parse_letter(g, tok));
  return normal_form(g, ls);
}

std::string letter_str(const CommutationGraph& g, Letter l) {
  std::string s = g.name(l.vertex);
  if (l.sign < 0) s += "^-1";
  return s;
}

std::string word_str(const CommutationGraph& g, const NormalWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += ' ';
    s += letter_str(g, w.letters[i]);
  }
  return s;
}

}  // namespace stk
