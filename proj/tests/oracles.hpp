#pragma once

// Brute-force reference computations shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "localdel/graph_core.hpp"

namespace oracle {

// Every simple cycle of length >= 3 by DFS from its smallest vertex; returns
// the vertex sets. Loops and parallel pairs are reported separately.
inline std::vector<std::vector<int>> simple_cycles(const localdel::ColouredGraph& g) {
  const int n = g.order();
  std::vector<std::set<int>> adj(n);
  for (const auto& e : g.edges())
    if (e.u != e.v) {
      adj[e.u].insert(e.v);
      adj[e.v].insert(e.u);
    }
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::vector<char> on(n, 0);
  std::function<void(int, int)> go = [&](int s, int v) {
    for (int w : adj[v]) {
      if (w == s && path.size() >= 3 && path[1] < path.back()) out.push_back(path);
      if (w <= s || on[w]) continue;
      on[w] = 1;
      path.push_back(w);
      go(s, w);
      path.pop_back();
      on[w] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    on[s] = 1;
    go(s, s);
    on[s] = 0;
  }
  return out;
}

inline int girth(const localdel::ColouredGraph& g) {
  std::map<std::pair<int, int>, int> mult;
  for (const auto& e : g.edges()) {
    if (e.u == e.v) return 1;
    ++mult[{std::min(e.u, e.v), std::max(e.u, e.v)}];
  }
  for (const auto& [k, m] : mult)
    if (m >= 2) return 2;
  int best = -1;
  for (const auto& c : simple_cycles(g))
    if (best < 0 || static_cast<int>(c.size()) < best) best = static_cast<int>(c.size());
  return best;
}

inline int vertices_on_short_cycles(const localdel::ColouredGraph& g, int L) {
  std::vector<char> on(g.order(), 0);
  std::map<std::pair<int, int>, int> mult;
  for (const auto& e : g.edges()) {
    if (e.u == e.v && L >= 1) on[e.u] = 1;
    if (e.u != e.v) ++mult[{std::min(e.u, e.v), std::max(e.u, e.v)}];
  }
  if (L >= 2)
    for (const auto& [k, m] : mult)
      if (m >= 2) on[k.first] = on[k.second] = 1;
  for (const auto& c : simple_cycles(g))
    if (static_cast<int>(c.size()) <= L)
      for (int v : c) on[v] = 1;
  return static_cast<int>(std::count(on.begin(), on.end(), 1));
}

// All perfect matchings of points 0..m-1, each as partner vector.
inline std::vector<std::vector<int>> matchings(int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> part(m, -1);
  std::function<void()> go = [&]() {
    int p = 0;
    while (p < m && part[p] >= 0) ++p;
    if (p == m) {
      out.push_back(part);
      return;
    }
    for (int q = p + 1; q < m; ++q) {
      if (part[q] >= 0) continue;
      part[p] = q;
      part[q] = p;
      go();
      part[p] = part[q] = -1;
    }
  };
  go();
  return out;
}

// Upper 0.001 tail of chi-square with k degrees of freedom (Wilson-Hilferty).
inline double chi2_critical_001(int k) {
  const double z = 3.090232306;
  const double a = 2.0 / (9.0 * k);
  return k * std::pow(1 - a + z * std::sqrt(a), 3);
}

}  // namespace oracle
