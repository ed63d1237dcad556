#include <doctest.h>

#include <cmath>

#include "localdel/algorithms.hpp"
#include "localdel/ode.hpp"
#include "util.hpp"

using namespace localdel;

namespace {

OdeSystem exponential() {
  OdeSystem s;
  s.dim = 1;
  s.rhs = [](double, const State1D& y, State1D& dy) { dy[0] = y[0]; };
  return s;
}

// Density vector for the cubic IS types with y1 = 0 and the given p.
std::vector<double> cubic_point(const AlgorithmSpec& s, double p) {
  std::vector<double> y(s.types.count(), 0.0);
  y[s.types.id(0, 2)] = p / 2;
  y[s.types.id(0, 3)] = (1 - p) / 3;
  return y;
}

}  // namespace

TEST_SUITE("ode") {

TEST_CASE("rk4 on y' = y") {
  SolveOptions opt;
  opt.h = 1e-3;
  const Solution sol = rk4_solve(exponential(), {1.0}, 0.0, 1.0, opt);
  CHECK(sol.x.back() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(sol.y.back()[0] - std::exp(1.0)) <= 1e-9);
  CHECK(sol.at(0.5)[0] == doctest::Approx(std::exp(0.5)).epsilon(1e-6));

  auto err = [](double h) {
    SolveOptions o;
    o.h = h;
    return std::abs(rk4_solve(exponential(), {1.0}, 0.0, 1.0, o).y.back()[0] - std::exp(1.0));
  };
  const double ratio = err(0.1) / err(0.05);
  CHECK(ratio > 14);
  CHECK(ratio < 18);
}

TEST_CASE("events, domain and sampling") {
  OdeSystem s;
  s.dim = 1;
  s.rhs = [](double, const State1D&, State1D& dy) { dy[0] = 1; };
  s.events.push_back([](double, const State1D& y) { return y[0] - 0.5; });
  SolveOptions opt;
  opt.h = 0.03;
  const Solution sol = rk4_solve(s, {0.0}, 0.0, 1.0, opt);
  REQUIRE(sol.events.size() == 1);
  CHECK(std::abs(sol.events[0].x - 0.5) <= 1e-12);
  CHECK(sol.x.back() == sol.events[0].x);

  opt.require_event = true;
  CHECK(kind_of([&] { rk4_solve(s, {0.0}, 0.0, 0.4, opt); }) == "NoEventInRange");
  s.domain = [](double, const State1D& y) { return y[0] < 0.3; };
  CHECK(kind_of([&] { rk4_solve(s, {0.0}, 0.0, 1.0, opt); }) == "LeftDomain");
  CHECK(kind_of([&] { rk4_solve(s, {0.5}, 0.0, 1.0, opt); }) == "LeftDomain");
  opt.h = 0;
  CHECK(kind_of([&] { rk4_solve(s, {0.0}, 0.0, 1.0, opt); }) == "BadParams");

  SolveOptions every;
  every.h = 0.01;
  every.sample_every = 10;
  const Solution coarse = rk4_solve(exponential(), {1.0}, 0.0, 1.0, every);
  CHECK(coarse.x.size() == 11);
  const std::string csv = coarse.to_csv({"y"});
  CHECK(csv.rfind("x,y\n0,1\n", 0) == 0);
}

TEST_CASE("cut system") {
  const OdeSystem s = cut_system();
  State1D dy(4);
  s.rhs(0.0, cut_initial(), dy);
  // u' = -6u(6u+s)/d with s = 3, d = 27
  CHECK(dy[0] == doctest::Approx(-2.0));
  CHECK(dy[1] == doctest::Approx(1.0));
  CHECK(dy[2] == doctest::Approx(0.0));
  CHECK(dy[3] == doctest::Approx(1.0));

  const CutConstants c = cut_constants();
  CHECK(std::abs(c.x0 - 0.8274171475) <= 1e-5);
  CHECK(std::abs(c.u - 0.00279) <= 5e-5);
  CHECK(std::abs(c.w - 0.0511) <= 5e-4);
  CHECK(std::abs(c.c - 1.330209040) <= 1e-5);
  CHECK(std::abs(c.v) <= 1e-10);

  const CutSelections p = cut_selections(0.4, 0.2, 0.1);
  CHECK(p.p01 + p.p10 + p.p02 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cubic independent set constants") {
  const CubicConstant base = cubic_is_constant(false);
  CHECK(std::abs(base.value - 0.43520602) <= 1e-7);
  CHECK(std::abs(base.value - base.closed_form) <= 1e-9);
  const CubicConstant imp = cubic_is_constant(true);
  CHECK(std::abs(imp.value - 0.43757463) <= 1e-7);
  CHECK(std::abs(1 / imp.value - 2.285325) <= 1e-5);
  CHECK(std::isnan(imp.closed_form));
}

TEST_CASE("cubic IS solution identities") {
  for (const bool improved : {false, true}) {
    SolveOptions opt;
    opt.sample_every = 100;
    const Solution sol = rk4_solve(cubic_is_system(improved), {0.0, 0.0, 1.0, 0.0}, 0.0, 2.0, opt);
    REQUIRE_FALSE(sol.events.empty());
    double worst_s = 0, worst_y3 = 0;
    for (const auto& y : sol.y) {
      CHECK(y[0] == 0.0);
      const double s = y[0] + 2 * y[1] + 3 * y[2];
      const double p = 2 * y[1] / s;
      worst_s = std::max(worst_s, std::abs(s - 3 * (1 - p) * (1 - p)));
      worst_y3 = std::max(worst_y3, std::abs(y[2] - std::pow(1 - p, 3)));
    }
    if (!improved) {
      CHECK(worst_s <= 1e-6);
      CHECK(worst_y3 <= 1e-6);
    }
  }
}

TEST_CASE("deprioritised mix") {
  const std::vector<double> f1{-1, 0, 2}, f2{1, 3, 0};
  const Mix m = deprioritised_mix(f1, f2, 0);
  CHECK(m.p1 == 0.5);
  CHECK(m.p2 == 0.5);
  CHECK(m.f == std::vector<double>{0, 1.5, 1});
  const Mix a0 = deprioritised_mix(std::vector<double>{-1, 1}, std::vector<double>{0, 2}, 0);
  CHECK(a0.p1 == 0.0);
  CHECK(a0.p2 == 1.0);
  CHECK(a0.f[0] == 0.0);
  CHECK(kind_of([] { deprioritised_mix(std::vector<double>{0, 1}, std::vector<double>{0, 1}, 0); }) ==
        "DegenerateMix");
}

TEST_CASE("min-degree greedy: degree-one mass stays at zero") {
  const AlgorithmSpec spec = make_algorithm("min_degree_is");
  const int R = spec.types.count(), t1 = spec.types.id(0, 1), t2 = spec.types.id(0, 2);
  OdeSystem sys;
  sys.dim = R + spec.output_count();
  double worst = 0;
  sys.rhs = [&](double, const State1D& y, State1D& dy) {
    std::span<const double> yr(y.data(), R);
    const auto f1 = eval_transition_generic(spec, t1, yr).f;
    const auto f2 = eval_transition_generic(spec, t2, yr).f;
    const Mix m = deprioritised_mix(f1, f2, t1);
    worst = std::max(worst, std::abs(m.p1 * f1[t1] + m.p2 * f2[t1]));
    std::copy(m.f.begin(), m.f.end(), dy.begin());
  };
  sys.events.push_back([&](double, const State1D& y) { return y[t2] - 0.05; });
  State1D y0(sys.dim, 0.0);
  y0[spec.types.id(0, 3)] = 0.999;
  y0[t2] = 0.001;
  SolveOptions opt;
  opt.h = 1e-3;
  const Solution sol = rk4_solve(sys, y0, 0.0, 2.0, opt);
  for (const auto& y : sol.y) CHECK(std::abs(y[t1]) <= 1e-8);
  CHECK(worst <= 1e-12);

  CHECK(std::abs(min_degree_is_mixed_value() - (6 * std::log(1.5) - 2)) <= 1e-4);
}

TEST_CASE("generic field on the full-degree point") {
  const AlgorithmSpec spec = make_algorithm("min_degree_is");
  const int R = spec.types.count();
  std::vector<double> y(R, 0.0);
  y[spec.types.id(0, 3)] = 1.0;
  EvalOptions opt;
  opt.want_g = true;
  const TransitionResult r = eval_transition_generic(spec, spec.types.id(0, 3), y, opt);
  CHECK(r.f[spec.types.id(0, 1)] == doctest::Approx(0.0));
  CHECK(r.f[spec.types.id(0, 2)] == doctest::Approx(6.0));
  CHECK(r.f[spec.types.id(0, 3)] == doctest::Approx(-10.0));
  CHECK(r.f[R + 0] == doctest::Approx(1.0));
  double total = r.residual;
  for (const auto& [k, g] : r.g) total += g;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(kind_of([&] { eval_transition_generic(spec, 3, std::vector<double>(R, 0.0)); }) == "OutsideDomain");
  CHECK(kind_of([&] { eval_transition_generic(spec, 3, std::vector<double>(R + 1, 0.0)); }) == "BadParams");
}

TEST_CASE("generic field against the hand-derived fields") {
  const AlgorithmSpec path = make_algorithm("cubic_is_path");
  const AlgorithmSpec imp = make_algorithm("cubic_is_path_improved");
  const int R = path.types.count();
  for (const double p : {0.1, 0.3, 0.5}) {
    CAPTURE(p);
    const auto y = cubic_point(path, p);
    const auto f1 = eval_transition_generic(path, path.types.id(0, 1), y).f;
    const auto h1 = cubic_is_op1(p);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(f1[k + 1] - h1[k]) <= 1e-10);
    CHECK(std::abs(f1[R] - h1[3]) <= 1e-10);
    const auto loss = 2 * (50 + 8) * std::pow(p, 50) / (1 - p);
    const TransitionResult f2 = eval_transition_generic(path, path.types.id(0, 2), y);
    const double lost = loss + f2.residual * 2 * (50 + 12);
    const auto h2 = cubic_is_base_op2(p);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(f2.f[k + 1] - h2[k]) <= 1e-10 + lost);
    CHECK(std::abs(f2.f[R] - 1 / (1 - p * p)) <= 1e-10 + lost);
    const TransitionResult g2 = eval_transition_generic(imp, imp.types.id(0, 2), y);
    const auto hi = cubic_is_improved_op2(p);
    double tail = g2.residual * 2 * (50 + 12);
    for (int m = 48; m < 2000; ++m) tail += std::pow(m + 1, 3) * (m + 12) * std::pow(p, m);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(g2.f[k + 1] - hi[k]) <= 1e-10 + tail);
    CHECK(std::abs(g2.f[R] - hi[3]) <= 1e-10 + tail);
  }

  const AlgorithmSpec cut = make_algorithm("cubic_maxcut");
  const int order[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> y6(6), y(cut.types.count(), 0.0);
    for (int a = 0; a < 6; ++a) {
      y6[a] = rng.uniform();
      y[cut.types.id(rb_colour(cut, order[a][0], order[a][1]), 3 - order[a][0] - order[a][1])] = y6[a];
    }
    for (int i = 0; i < 6; ++i) {
      const int ti = cut.types.id(rb_colour(cut, order[i][0], order[i][1]), 3 - order[i][0] - order[i][1]);
      const auto f = eval_transition_generic(cut, ti, y).f;
      for (int k = 0; k < 6; ++k) {
        const int tk = cut.types.id(rb_colour(cut, order[k][0], order[k][1]), 3 - order[k][0] - order[k][1]);
        CHECK(std::abs(f[tk] - fcuts(order[k][0], order[k][1], order[i][0], order[i][1], y6)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("generic field is Lipschitz on the domain") {
  const AlgorithmSpec cut = make_algorithm("cubic_maxcut");
  const FieldFn f = generic_field(cut);
  const int R = cut.types.count();
  const int t = cut.types.id(rb_colour(cut, 0, 1), 2);
  Rng rng(4);
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    std::vector<double> a(R, 0.0), b(R, 0.0);
    for (int c = 0; c < 6; ++c)
      for (int d = 1; d <= 3; ++d) {
        a[cut.types.id(c, d)] = 0.05 + rng.uniform();
        b[cut.types.id(c, d)] = a[cut.types.id(c, d)] + 1e-3 * (rng.uniform() - 0.5);
      }
    const auto fa = f(t, a), fb = f(t, b);
    double df = 0, dy = 0;
    for (std::size_t j = 0; j < fa.size(); ++j) df = std::max(df, std::abs(fa[j] - fb[j]));
    for (int j = 0; j < R; ++j) dy = std::max(dy, std::abs(a[j] - b[j]));
    worst = std::max(worst, df / dy);
  }
  CHECK(worst < 100);
}

TEST_CASE("cut selections on the generic field reproduce the cut system") {
  const AlgorithmSpec cut = make_algorithm("cubic_maxcut");
  const int R = cut.types.count();
  const int t00 = cut.types.id(rb_colour(cut, 0, 0), 3), t01 = cut.types.id(rb_colour(cut, 0, 1), 2),
            t10 = cut.types.id(rb_colour(cut, 1, 0), 2), t11 = cut.types.id(rb_colour(cut, 1, 1), 1),
            t02 = cut.types.id(rb_colour(cut, 0, 2), 1);
  const OdeSystem sys = deprioritised_rhs(
      [=](double, const State1D& y, int type) {
        const CutSelections p = cut_selections(y[t00], y[t01], y[t11]);
        if (type == t01) return p.p01;
        if (type == t10) return p.p10;
        if (type == t02) return p.p02;
        return 0.0;
      },
      generic_field(cut), R, cut.output_count());
  State1D y0(sys.dim, 0.0);
  y0[t00] = 1;
  SolveOptions opt;
  opt.h = 1e-3;
  const Solution a = rk4_solve(sys, y0, 0.0, 0.8, opt);
  const Solution b = rk4_solve(cut_system(), cut_initial(), 0.0, 0.8, opt);
  REQUIRE(a.y.size() == b.y.size());
  double worst = 0;
  for (std::size_t k = 0; k < a.y.size(); ++k) {
    worst = std::max(worst, std::abs(a.y[k][t00] - b.y[k][0]));
    worst = std::max(worst, std::abs(a.y[k][t01] - b.y[k][1]));
    worst = std::max(worst, std::abs(a.y[k][t10]));
    worst = std::max(worst, std::abs(a.y[k][t02]));
    worst = std::max(worst, std::abs(a.y[k][t11] - b.y[k][2]));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("euler recurrence") {
  const FieldFn decay = [](int, std::span<const double>) { return std::vector<double>{-1.0}; };
  const auto flat = euler_recurrence([](long long, int) { return 0.0; }, decay, 1, {0.7}, 10);
  CHECK(flat.size() == 11);
  for (const auto& z : flat) CHECK(z[0] == 0.7);
  const auto one = euler_recurrence([](long long, int) { return 0.25; }, decay, 1, {0.8}, 1);
  CHECK(one[1][0] == 0.8 + 0.25 * 0.8 * -1.0);

  // z(1/eps) -> exp(-1) with error O(eps).
  auto err = [&](double eps) {
    const auto z = euler_recurrence([eps](long long, int) { return eps; }, decay, 1, {1.0},
                                    static_cast<long long>(std::llround(1 / eps)));
    return std::abs(z.back()[0] - std::exp(-1.0));
  };
  const double e1 = err(0.02), e2 = err(0.01), e3 = err(0.005);
  CHECK(e1 / e2 == doctest::Approx(2).epsilon(0.05));
  CHECK(e2 / e3 == doctest::Approx(2).epsilon(0.05));

  const FieldFn guarded = [](int, std::span<const double>) -> std::vector<double> {
    fail("OutsideDomain", "empty");
  };
  const std::string k = kind_of([&] { euler_recurrence([](long long, int) { return 0.1; }, guarded, 1, {1.0}, 3); });
  CHECK(k == "OutsideDomain");
}

TEST_CASE("chunky rhs with zero selection is constant") {
  const AlgorithmSpec spec = make_algorithm("min_degree_is");
  const int R = spec.types.count();
  const OdeSystem sys = chunky_rhs([](double, int) { return 0.0; }, generic_field(spec), R, spec.output_count());
  State1D y0(sys.dim, 0.0);
  y0[spec.types.id(0, 3)] = 1;
  const Solution sol = rk4_solve(sys, y0, 0.0, 1.0, SolveOptions{0.1});
  CHECK(sol.y.back() == y0);
}

TEST_CASE("deprioritised schedules") {
  const AlgorithmSpec cut = make_algorithm("cubic_maxcut");
  const Deprioritised d = deprioritised_schedule(cut, 0.02);
  const int t00 = cut.types.id(rb_colour(cut, 0, 0), 3);
  CHECK(d.p(0.01, t00) == 1.0);
  double total = 0;
  for (int t = 0; t < cut.types.count(); ++t) total += d.p(0.3, t);
  CHECK(total == doctest::Approx(1.0));
  CHECK(d.p(0.9, cut.types.id(rb_colour(cut, 0, 1), 2)) == 0.0);
  CHECK(kind_of([] { deprioritised_schedule(make_algorithm("dz_is"), 0.02); }) == "BadParams");
  CHECK(kind_of([&] { deprioritised_schedule(cut, 0.0); }) == "BadParams");
}

}
