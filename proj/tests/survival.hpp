#pragma once

// Exhaustive check that one step of the min-degree independent-set rule leaves
// the unexposed part of a uniform pairing uniform given the surviving degrees.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "localdel/algorithms.hpp"
#include "oracles.hpp"

namespace survival {

using Key = std::vector<std::pair<int, int>>;

struct Report {
  bool ok = true;
  long long runs = 0;
  int groups = 0;
  std::string detail;
};

inline Key edge_key(const localdel::State& st) {
  Key k;
  for (int u = 0; u < st.order(); ++u) {
    if (!st.alive(u)) continue;
    for (int h : st.live(u)) {
      const int x = st.owner(st.known_mate(h));
      if (u < x || (u == x && h < st.known_mate(h))) k.emplace_back(u, x);
    }
  }
  std::sort(k.begin(), k.end());
  return k;
}

// Number of point matchings on buckets of the given sizes realising each multigraph.
inline std::map<Key, long long> matching_weights(const std::vector<int>& deg) {
  std::vector<int> owner;
  for (std::size_t v = 0; v < deg.size(); ++v)
    for (int i = 0; i < deg[v]; ++i) owner.push_back(static_cast<int>(v));
  std::map<Key, long long> w;
  for (const auto& m : oracle::matchings(static_cast<int>(owner.size()))) {
    Key k;
    for (std::size_t p = 0; p < m.size(); ++p)
      if (static_cast<int>(p) < m[p])
        k.emplace_back(std::min(owner[p], owner[m[p]]), std::max(owner[p], owner[m[p]]));
    std::sort(k.begin(), k.end());
    ++w[k];
  }
  return w;
}

inline Report check(int n = 6, int r = 2) {
  using namespace localdel;
  const AlgorithmSpec spec = make_algorithm("min_degree_is", AlgorithmParams{r});
  Report rep;
  // surviving degree sequence (-1 = dead) -> multigraph -> runs
  std::map<std::vector<int>, std::map<Key, long long>> seen;
  for (const auto& m : oracle::matchings(n * r)) {
    ColouredGraph g(n);
    for (int p = 0; p < n * r; ++p)
      if (p < m[p]) g.add_edge(p / r, m[p] / r);
    for (int v = 0; v < n; ++v) {
      State st = State::from_graph(g, spec.types);
      Rng rng(0);
      Engine eng(spec, st, rng);
      eng.step_with({v});
      std::vector<int> deg(n, -1);
      for (int u = 0; u < n; ++u)
        if (st.alive(u)) deg[u] = st.degree(u);
      ++seen[deg][edge_key(st)];
      ++rep.runs;
    }
  }
  rep.groups = static_cast<int>(seen.size());
  for (const auto& [deg, obs] : seen) {
    std::vector<int> d;
    for (int x : deg) d.push_back(std::max(x, 0));
    const auto w = matching_weights(d);
    long long tot_obs = 0, tot_w = 0;
    for (const auto& [k, c] : obs) tot_obs += c;
    for (const auto& [k, c] : w) tot_w += c;
    for (const auto& [k, c] : obs)
      if (!w.count(k)) rep.ok = false;
    for (const auto& [k, c] : w) {
      const auto it = obs.find(k);
      const long long o = it == obs.end() ? 0 : it->second;
      if (o * tot_w != c * tot_obs) {
        rep.ok = false;
        std::ostringstream os;
        os << "degree sequence";
        for (int x : deg) os << ' ' << x;
        os << ": observed " << o << "/" << tot_obs << ", expected " << c << "/" << tot_w;
        rep.detail = os.str();
      }
    }
  }
  return rep;
}

}  // namespace survival
