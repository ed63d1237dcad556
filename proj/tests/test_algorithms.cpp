#include <doctest.h>

#include <json.hpp>
#include <set>

#include "localdel/algorithms.hpp"
#include "util.hpp"

using namespace localdel;

namespace {

ColouredGraph cycle(int n) {
  ColouredGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

ColouredGraph path(int n) {
  ColouredGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

// Brute force over all vertex subsets.
int max_independent(const ColouredGraph& g) {
  const int n = g.order();
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& e : g.edges())
      if ((mask >> e.u & 1) && (mask >> e.v & 1)) ok = false;
    if (ok) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

int min_dominating(const ColouredGraph& g) {
  const int n = g.order();
  int best = n;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    unsigned dom = mask;
    for (const auto& e : g.edges()) {
      if (mask >> e.u & 1) dom |= 1u << e.v;
      if (mask >> e.v & 1) dom |= 1u << e.u;
    }
    if (dom == (1u << n) - 1) best = std::min(best, __builtin_popcount(mask));
  }
  return best;
}

Trial run_once(const AlgorithmSpec& spec, State st, Rng& rng) { return run_trial(spec, std::move(st), rng); }

}  // namespace

TEST_SUITE("algorithms") {

TEST_CASE("specs") {
  const AlgorithmSpec is = make_algorithm("min_degree_is", AlgorithmParams{3});
  CHECK(is.depth == 1);
  CHECK(is.palette.output.size() == 3);
  CHECK(make_algorithm("cubic_is_path", AlgorithmParams{3, 50}).depth == 51);
  CHECK(algorithm_names().size() == 8);
  for (const auto& name : algorithm_names()) {
    CAPTURE(name);
    const AlgorithmSpec s = make_algorithm(name, AlgorithmParams{name == "bisection" ? 4 : 3});
    CHECK(s.name == name);
    CHECK(s.subrule);
    CHECK(s.recolouring);
    CHECK(s.palette.output.back() == "clash");
  }
  CHECK(kind_of([] { make_algorithm("k_dominating"); }) == "UnknownName");
  CHECK(kind_of([] { make_algorithm("dz_is", AlgorithmParams{2}); }) == "BadParams");
  CHECK(kind_of([] { make_algorithm("cubic_maxcut", AlgorithmParams{4}); }) == "BadParams");
  AlgorithmParams bad;
  bad.mode = "greedy";
  CHECK(kind_of([&] { make_algorithm("min_degree_is", bad); }) == "BadParams");
  bad.mode = "chunky";
  bad.epsilon = 0;
  CHECK(kind_of([&] { make_algorithm("min_degree_is", bad); }) == "BadParams");
  bad = {};
  bad.dz_rule2a = "equal";
  CHECK(kind_of([&] { make_algorithm("dz_is", bad); }) == "BadParams");
}

TEST_CASE("max cut palette is the census of reachable colours") {
  // Start from 00 and apply "one more red / blue neighbour" while degree stays positive.
  std::set<std::pair<int, int>> seen{{0, 0}};
  std::vector<std::pair<int, int>> todo{{0, 0}};
  while (!todo.empty()) {
    const auto [r, b] = todo.back();
    todo.pop_back();
    for (const auto& nx : {std::pair{r + 1, b}, std::pair{r, b + 1}})
      if (nx.first + nx.second <= 2 && seen.insert(nx).second) todo.push_back(nx);
  }
  const AlgorithmSpec cut = make_algorithm("cubic_maxcut");
  CHECK(cut.palette.transient.size() == seen.size() + 1);
  for (const auto& [r, b] : seen) {
    const int c = rb_colour(cut, r, b);
    CHECK(c != cut.palette.terminal());
    CHECK(rb_red(cut, c) == r);
    CHECK(rb_blue(cut, c) == b);
  }
  CHECK(cut.palette.transient.back() == "flagged");
  CHECK(cut.output_names() == std::vector<std::string>{"red", "blue", "clash", "cut"});
}

TEST_CASE("validation") {
  const ColouredGraph c5 = cycle(5);
  CHECK(check_independent(c5, {0, 2}).ok);
  const Validation bad = check_independent(c5, {0, 1});
  CHECK_FALSE(bad.ok);
  CHECK(bad.certificate.find("(0,1)") != std::string::npos);
  CHECK(check_dominating(c5, {0, 1, 2, 3, 4}).ok);
  CHECK_FALSE(check_dominating(c5, {0}).ok);
  CHECK(check_forest(c5, {0, 1, 2, 3}).ok);
  CHECK_FALSE(check_forest(c5, {0, 1, 2, 3, 4}).ok);
  const Validation cut = check_cut(c5, {0, 1, 0, 1, 0});
  CHECK(cut.ok);
  CHECK(cut.value == 4);
  CHECK_FALSE(check_cut(c5, {0, 1, -1, 1, 0}).ok);
  CHECK(check_bisection(cycle(4), {0, 1, 0, 1}).ok);
  CHECK(check_bisection(cycle(4), {0, 1, 0, 1}).value == 4);
  CHECK_FALSE(check_bisection(cycle(4), {0, 0, 0, 1}).ok);
}

TEST_CASE("dominating repair") {
  const AlgorithmSpec dom = make_algorithm("min_degree_dom", AlgorithmParams{2});
  Rng rng(1);
  const ColouredGraph c5 = cycle(5);
  RawOutput raw{c5, std::vector<int>(5, -1), std::vector<int>(5, 0), 0};
  const Repaired rep = repair_output(dom, raw, rng);
  CHECK(min_dominating(c5) == 2);
  CHECK(rep.set.size() == 2);
  CHECK(rep.added == 2);
  CHECK(validate_output("min_degree_dom", c5, rep).ok);

  // Already dominating: nothing is added.
  raw.output = {0, 1, 1, 0, 1};
  const Repaired same = repair_output(dom, raw, rng);
  CHECK(same.set == std::vector<int>{0, 3});
  CHECK(same.added == 0);

  // Greedy extension keeps an independent set independent.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng r2(seed);
    const ColouredGraph g = sample_simple_regular(30, 3, r2);
    std::vector<int> set;
    for (int v = 0; v < 30; v += 7) set.push_back(v);
    if (!check_independent(g, set).ok) continue;
    greedy_dominate(g, set);
    CHECK(check_independent(g, set).ok);
    CHECK(check_dominating(g, set).ok);
  }
}

TEST_CASE("max cut second phase on a surviving edge") {
  const AlgorithmSpec cut = make_algorithm("cubic_maxcut");
  ColouredGraph g(2);
  g.add_edge(0, 1);
  const int c11 = rb_colour(cut, 1, 1);
  RawOutput raw{g, {-1, -1}, {c11, c11}, 0};
  Rng rng(2);
  const Repaired rep = repair_output(cut, raw, rng);
  CHECK(rep.cut == 1);
  CHECK(rep.side[0] != rep.side[1]);
  CHECK(validate_output("cubic_maxcut", g, rep).ok);
}

TEST_CASE("path rule is optimal on paths") {
  const AlgorithmSpec spec = make_algorithm("cubic_is_path");
  for (int k = 1; k <= 20; ++k) {
    CAPTURE(k);
    const ColouredGraph g = path(k);
    const int best = max_independent(g);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(seed);
      const Trial o = run_once(spec, State::from_graph(g, spec.types), rng);
      CHECK(o.val.ok);
      CHECK(o.val.value == best);
    }
  }
}

TEST_CASE("every algorithm produces valid output") {
  for (const auto& name : algorithm_names()) {
    for (const int n : {10, 100, 1000, 10000}) {
      for (const std::string mode : {"prioritised", "chunky"}) {
        AlgorithmParams ap;
        ap.r = name == "bisection" ? 4 : 3;
        ap.mode = mode;
        ap.epsilon = 0.05;
        const AlgorithmSpec spec = make_algorithm(name, ap);
        for (std::uint64_t seed = 0; seed < (n <= 100 ? 20u : 2u); ++seed) {
          CAPTURE(name);
          CAPTURE(n);
          CAPTURE(mode);
          CAPTURE(seed);
          Rng rng(seed);
          const Trial o = run_once(spec, State::from_pairing(n, ap.r, spec.types), rng);
          CHECK_MESSAGE(o.val.ok, o.val.certificate);
          if (name == "bisection") {
            const long long red = std::count(o.rep.side.begin(), o.rep.side.end(), 0);
            CHECK(2 * red == n);
          }
        }
      }
    }
  }
}

TEST_CASE("supergraph of copies bounds a non-regular graph") {
  // Max degree 3 graph with deficient vertices: a 5-cycle with one chord.
  ColouredGraph base(5);
  for (int i = 0; i < 5; ++i) base.add_edge(i, (i + 1) % 5);
  base.add_edge(0, 2);
  // m copies; copies of a deficient vertex are joined along a cycle or a perfect matching.
  const int m = 8;
  ColouredGraph big(5 * m);
  for (int c = 0; c < m; ++c)
    for (const auto& e : base.edges()) big.add_edge(5 * c + e.u, 5 * c + e.v);
  for (int v = 0; v < 5; ++v) {
    const int def = 3 - base.degree(v);
    for (int c = 0; c < m; ++c) {
      if (def >= 1 && c % 2 == 0) big.add_edge(5 * c + v, 5 * (c + 1) + v);
      if (def >= 2 && c % 2 == 1) big.add_edge(5 * c + v, 5 * ((c + 1) % m) + v);
    }
  }
  REQUIRE(big.is_regular(3));
  const AlgorithmSpec spec = make_algorithm("min_degree_is");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const Trial o = run_once(spec, State::from_graph(big, spec.types), rng);
    REQUIRE(o.val.ok);
    std::size_t best = 0;
    for (int c = 0; c < m; ++c) {
      std::vector<int> part;
      for (int v : o.rep.set)
        if (v / 5 == c) part.push_back(v % 5);
      CHECK(check_independent(base, part).ok);
      best = std::max(best, part.size());
    }
    CHECK(static_cast<double>(best) >= static_cast<double>(o.rep.set.size()) / m);
    CHECK(static_cast<int>(best) <= max_independent(base));
  }
}

TEST_CASE("bisection raw output is already nearly balanced") {
  // xy and yx are drawn fairly, so the mirror colour is seeded from the start
  for (const bool maximise : {false, true}) {
    AlgorithmParams ap;
    ap.r = 3;
    ap.max_bisection = maximise;
    const AlgorithmSpec spec = make_algorithm("bisection", ap);
    Rng rng(12);
    const Trial t = run_trial(spec, State::from_pairing(4000, 3, spec.types), rng);
    CHECK(t.val.ok);
    const long long red = std::count(t.raw.output.begin(), t.raw.output.end(), 0);
    CHECK(std::abs(red - 2000) <= 200);
    CHECK(t.rep.added <= 200);
    if (!maximise) CHECK(t.ratio < 0.5);
    else CHECK(t.ratio > 1.0);
  }
}

TEST_CASE("registry") {
  const auto reg = nlohmann::json::parse(algorithm_registry_json());
  REQUIRE(reg.is_array());
  CHECK(reg.size() == 8);
  for (const auto& a : reg) {
    CHECK(a.contains("params"));
    CHECK(a.contains("outputs"));
  }
  const AlgorithmParams p = params_from_json(R"({"r":4,"mode":"chunky","epsilon":0.02})");
  CHECK(p.r == 4);
  CHECK(p.mode == "chunky");
  CHECK(p.epsilon == 0.02);
  CHECK(p.d == 50);
  const AlgorithmParams q = params_from_json(params_to_json(p));
  CHECK(params_to_json(q) == params_to_json(p));
  CHECK(kind_of([] { params_from_json(R"({"radius":3})"); }) == "BadParams");
  CHECK(kind_of([] { params_from_json("[1,2]"); }) == "BadParams");
  CHECK(kind_of([] { params_from_json("{"); }) == "BadParams");
  CHECK(kind_of([] { params_from_json(R"({"r":"three"})"); }) == "BadParams");
}

}
