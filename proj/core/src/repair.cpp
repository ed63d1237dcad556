#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <utility>

#include "localdel/algorithms.hpp"
#include "localdel/errors.hpp"

namespace localdel {

namespace {

bool is_set_algorithm(const std::string& name) {
  return name == "min_degree_is" || name == "dz_is" || name == "cubic_is_path" ||
         name == "cubic_is_path_improved";
}

std::string edge_text(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

long long count_cut(const ColouredGraph& g, const std::vector<int>& side) {
  long long c = 0;
  for (const Edge& e : g.edges())
    if (side[e.u] != side[e.v]) ++c;
  return c;
}

// Gain of placing v on side s against already assigned neighbours.
int gain(const ColouredGraph& g, const std::vector<int>& side, int v, int s) {
  int c = 0;
  for (int e : g.incident(v)) {
    const int u = g.other(e, v);
    if (u != v && side[u] >= 0 && side[u] != s) ++c;
  }
  return c;
}

void maxcut_second_phase(const ColouredGraph& g, const RawOutput& raw, std::vector<int>& side,
                         Rng& rng, long long& added) {
  const int n = g.order();
  std::vector<int> comp(n, -1);
  std::vector<int> order;
  for (int s = 0; s < n; ++s) {
    if (side[s] >= 0 || raw.output[s] >= 0 || comp[s] >= 0) continue;
    // Component of surviving vertices containing s.
    std::vector<int> members{s};
    comp[s] = s;
    long long edge_ends = 0;
    for (std::size_t k = 0; k < members.size(); ++k) {
      const int v = members[k];
      for (int e : g.incident(v)) {
        const int u = g.other(e, v);
        if (raw.output[u] >= 0) continue;
        ++edge_ends;
        if (comp[u] < 0) {
          comp[u] = s;
          members.push_back(u);
        }
      }
    }
    const bool tree = edge_ends / 2 == static_cast<long long>(members.size()) - 1;
    if (tree) {
      std::vector<int> parity(n, -1);
      parity[s] = 0;
      for (int v : members)
        for (int e : g.incident(v)) {
          const int u = g.other(e, v);
          if (raw.output[u] < 0 && parity[u] < 0) parity[u] = 1 - parity[v];
        }
      // BFS order in `members` guarantees parents are labelled first.
      int best = 0;
      long long best_gain = -1;
      for (int flip = 0; flip < 2; ++flip) {
        long long gsum = 0;
        for (int v : members) gsum += gain(g, side, v, parity[v] ^ flip);
        if (gsum > best_gain) {
          best_gain = gsum;
          best = flip;
        }
      }
      for (int v : members) side[v] = parity[v] ^ best;
    } else {
      for (int v : members) {
        const int g0 = gain(g, side, v, 0), g1 = gain(g, side, v, 1);
        side[v] = g0 == g1 ? static_cast<int>(rng.below(2)) : (g1 > g0 ? 1 : 0);
      }
    }
    added += static_cast<long long>(members.size());
  }
  for (int v = 0; v < n; ++v) {
    if (side[v] >= 0) continue;
    const int g0 = gain(g, side, v, 0), g1 = gain(g, side, v, 1);
    side[v] = g0 == g1 ? static_cast<int>(rng.below(2)) : (g1 > g0 ? 1 : 0);
    ++added;
  }
}

void bisection_balance(const ColouredGraph& g, std::vector<int>& side, bool maximise, long long& added) {
  const int n = g.order();
  const int half = n / 2;
  int count[2] = {0, 0};
  for (int v = 0; v < n; ++v)
    if (side[v] >= 0) ++count[side[v]];
  for (int v = 0; v < n; ++v) {
    if (side[v] >= 0) continue;
    int s;
    if (count[0] >= n - half) s = 1;
    else if (count[1] >= half) s = 0;
    else {
      const int g0 = gain(g, side, v, 0), g1 = gain(g, side, v, 1);
      s = maximise ? (g1 > g0 ? 1 : 0) : (g1 < g0 ? 1 : 0);
    }
    side[v] = s;
    ++count[s];
    ++added;
  }
  // Swap surplus vertices across if the run itself was unbalanced.
  for (int from = 0; from < 2; ++from) {
    const int target = from == 0 ? n - half : half;
    for (int v = 0; v < n && count[from] > target; ++v)
      if (side[v] == from) {
        side[v] = 1 - from;
        --count[from];
        ++count[1 - from];
        ++added;
      }
  }
}

}  // namespace

RawOutput collect_output(const AlgorithmSpec& spec, State& state, Rng& rng) {
  state.complete(rng);
  RawOutput raw;
  raw.graph = state.input_graph();
  const int n = state.order();
  raw.output.resize(n);
  raw.colour.resize(n);
  for (int v = 0; v < n; ++v) {
    raw.output[v] = state.output(v);
    raw.colour[v] = state.alive(v) ? state.colour(v) : -1;
  }
  (void)spec;
  return raw;
}

long long greedy_dominate(const ColouredGraph& g, std::vector<int>& set) {
  const int n = g.order();
  std::vector<char> dom(n, 0);
  for (int v : set) {
    dom[v] = 1;
    for (int e : g.incident(v)) dom[g.other(e, v)] = 1;
  }
  long long added = 0;
  for (int v = 0; v < n; ++v) {
    if (dom[v]) continue;
    set.push_back(v);
    ++added;
    dom[v] = 1;
    for (int e : g.incident(v)) dom[g.other(e, v)] = 1;
  }
  std::sort(set.begin(), set.end());
  return added;
}

Repaired repair_output(const AlgorithmSpec& spec, const RawOutput& raw, Rng& rng) {
  Repaired rep;
  const ColouredGraph& g = raw.graph;
  const int n = g.order();
  const std::string& name = spec.name;
  if (name == "cubic_maxcut" || name == "bisection") {
    rep.side.assign(n, -1);
    for (int v = 0; v < n; ++v)
      if (raw.output[v] == 0 || raw.output[v] == 1) rep.side[v] = raw.output[v];
    if (name == "cubic_maxcut") {
      maxcut_second_phase(g, raw, rep.side, rng, rep.added);
    } else {
      bisection_balance(g, rep.side, spec.maximise, rep.added);
    }
    rep.cut = count_cut(g, rep.side);
    return rep;
  }
  for (int v = 0; v < n; ++v)
    if (raw.output[v] == spec.set_colour) rep.set.push_back(v);
  if (name == "min_degree_dom") rep.added = greedy_dominate(g, rep.set);
  (void)rng;
  return rep;
}

Validation check_independent(const ColouredGraph& g, const std::vector<int>& set) {
  Validation val;
  std::vector<char> in(g.order(), 0);
  for (int v : set) in[v] = 1;
  for (const Edge& e : g.edges())
    if (e.u != e.v && in[e.u] && in[e.v]) {
      val.ok = false;
      val.certificate = "edge " + edge_text(e) + " inside the set";
      break;
    }
  val.value = static_cast<long long>(set.size());
  return val;
}

Validation check_dominating(const ColouredGraph& g, const std::vector<int>& set) {
  Validation val;
  std::vector<char> dom(g.order(), 0);
  for (int v : set) {
    dom[v] = 1;
    for (int e : g.incident(v)) dom[g.other(e, v)] = 1;
  }
  for (int v = 0; v < g.order(); ++v)
    if (!dom[v]) {
      val.ok = false;
      val.certificate = "vertex " + std::to_string(v) + " undominated";
      break;
    }
  val.value = static_cast<long long>(set.size());
  return val;
}

Validation check_forest(const ColouredGraph& g, const std::vector<int>& set) {
  Validation val;
  const int n = g.order();
  std::vector<char> in(n, 0);
  for (int v : set) in[v] = 1;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : g.edges()) {
    if (!in[e.u] || !in[e.v]) continue;
    const int a = find(e.u), b = find(e.v);
    if (a == b) {
      val.ok = false;
      val.certificate = "edge " + edge_text(e) + " closes a cycle";
      break;
    }
    parent[a] = b;
  }
  val.value = static_cast<long long>(set.size());
  return val;
}

Validation check_cut(const ColouredGraph& g, const std::vector<int>& side) {
  Validation val;
  if (static_cast<int>(side.size()) != g.order()) {
    val.ok = false;
    val.certificate = "side vector has wrong length";
    return val;
  }
  for (int v = 0; v < g.order(); ++v)
    if (side[v] != 0 && side[v] != 1) {
      val.ok = false;
      val.certificate = "vertex " + std::to_string(v) + " unassigned";
      return val;
    }
  val.value = count_cut(g, side);
  return val;
}

Validation check_bisection(const ColouredGraph& g, const std::vector<int>& side) {
  Validation val = check_cut(g, side);
  if (!val.ok) return val;
  const long long red = std::count(side.begin(), side.end(), 0);
  const long long blue = g.order() - red;
  if (std::abs(red - blue) > (g.order() % 2)) {
    val.ok = false;
    std::ostringstream os;
    os << "unbalanced: " << red << " red, " << blue << " blue";
    val.certificate = os.str();
  }
  return val;
}

Validation validate_output(const std::string& name, const ColouredGraph& g, const Repaired& rep) {
  if (is_set_algorithm(name)) return check_independent(g, rep.set);
  if (name == "min_degree_dom") {
    Validation a = check_independent(g, rep.set);
    if (!a.ok) return a;
    return check_dominating(g, rep.set);
  }
  if (name == "induced_forest") return check_forest(g, rep.set);
  if (name == "cubic_maxcut") return check_cut(g, rep.side);
  if (name == "bisection") return check_bisection(g, rep.side);
  fail("UnknownName", "no validator for " + name);
}

Trial run_trial(const AlgorithmSpec& spec, State state, Rng& rng, const StopRule& stop, const RunOptions& opt) {
  Trial t;
  t.run = run_algorithm(spec, std::move(state), stop, rng, opt);
  t.raw = collect_output(spec, t.run.state, rng);
  t.rep = repair_output(spec, t.raw, rng);
  t.val = validate_output(spec.name, t.raw.graph, t.rep);
  const int n = t.raw.graph.order();
  t.ratio = n ? static_cast<double>(t.val.value) / n : 0.0;
  return t;
}

}  // namespace localdel
