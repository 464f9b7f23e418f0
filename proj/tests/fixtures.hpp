#pragma once

#include <random>
#include <string>
#include <vector>

#include "stk/graph.hpp"

// The running example graph used throughout the test suite: nine vertices
// a..i, two big joins and a pendant vertex i attached at h.
inline stk::CommutationGraph example_graph() {
  std::vector<std::string> vs = {"a", "b", "c", "d", "e", "f", "g", "h", "i"};
  std::vector<std::pair<std::string, std::string>> es = {
      {"a", "c"}, {"a", "d"}, {"a", "e"}, {"b", "c"}, {"b", "d"}, {"b", "e"},
      {"c", "d"}, {"c", "h"}, {"d", "e"}, {"d", "f"}, {"d", "g"}, {"d", "h"},
      {"e", "f"}, {"e", "g"}, {"e", "h"}, {"f", "g"}, {"h", "i"}};
  return stk::CommutationGraph(vs, es);
}

inline stk::CommutationGraph null_graph(int n) {
  std::vector<std::string> vs;
  for (int i = 0; i < n; ++i) vs.push_back("x" + std::to_string(i));
  return stk::CommutationGraph(vs, {});
}

inline stk::CommutationGraph complete_graph(int n) {
  std::vector<std::string> vs;
  for (int i = 0; i < n; ++i) vs.push_back("x" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(vs[i], vs[j]);
  return stk::CommutationGraph(vs, es);
}

inline stk::CommutationGraph path_graph(int n) {
  std::vector<std::string> vs;
  for (int i = 0; i < n; ++i) vs.push_back("p" + std::to_string(i + 1));
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(vs[i], vs[i + 1]);
  return stk::CommutationGraph(vs, es);
}

inline stk::CommutationGraph random_graph(int n, std::mt19937_64& rng,
                                          double edge_prob = 0.4) {
  std::vector<std::string> vs;
  for (int i = 0; i < n; ++i) vs.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::pair<std::string, std::string>> es;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < edge_prob) es.emplace_back(vs[i], vs[j]);
  return stk::CommutationGraph(vs, es);
}
