#include "localdel/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include "localdel/algorithms.hpp"
#include "localdel/errors.hpp"

namespace localdel {

namespace {

using Stepper = boost::numeric::odeint::runge_kutta4<State1D>;

int sign_of(double v) { return (v > 0) - (v < 0); }

bool finite(const State1D& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

std::string where(double x, const State1D& y) {
  std::ostringstream os;
  os.precision(10);
  os << "x=" << x << " y=(";
  for (std::size_t k = 0; k < y.size(); ++k) os << (k ? "," : "") << y[k];
  os << ")";
  return os.str();
}

}  // namespace

State1D Solution::at(double xq) const {
  if (x.empty()) return {};
  if (xq <= x.front()) return y.front();
  if (xq >= x.back()) return y.back();
  const auto k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), xq) - x.begin());
  const double a = (xq - x[k - 1]) / (x[k] - x[k - 1]);
  State1D out(y[k].size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (1 - a) * y[k - 1][j] + a * y[k][j];
  return out;
}

std::string Solution::to_csv(const std::vector<std::string>& names) const {
  std::ostringstream os;
  os.precision(12);
  os << "x";
  const std::size_t dim = y.empty() ? names.size() : y.front().size();
  for (std::size_t j = 0; j < dim; ++j) os << ',' << (j < names.size() ? names[j] : "y" + std::to_string(j));
  os << '\n';
  for (std::size_t k = 0; k < x.size(); ++k) {
    os << x[k];
    for (double v : y[k]) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

Solution rk4_solve(const OdeSystem& sys, State1D y, double x0, double x1, const SolveOptions& opt) {
  if (!(opt.h > 0)) fail("BadParams", "step size must be positive");
  if (static_cast<int>(y.size()) != sys.dim) fail("BadParams", "initial vector has the wrong dimension");
  auto inside = [&](double x, const State1D& v) { return finite(v) && (!sys.domain || sys.domain(x, v)); };
  if (!inside(x0, y)) fail("LeftDomain", "initial point outside the domain: " + where(x0, y));

  Stepper stepper;
  auto rhs = [&](const State1D& v, State1D& dv, double x) {
    dv.resize(v.size());
    sys.rhs(x, v, dv);
  };
  Solution sol;
  sol.x.push_back(x0);
  sol.y.push_back(y);
  const std::size_t ne = sys.events.size();
  std::vector<int> last(ne, 0);
  for (std::size_t m = 0; m < ne; ++m) last[m] = sign_of(sys.events[m](x0, y));

  double x = x0;
  long long k = 0;
  State1D next(y.size());
  while (x < x1) {
    const double h = std::min(opt.h, x1 - x);
    next = y;
    stepper.do_step(rhs, next, x, h);
    const double xn = x + h;
    if (!inside(xn, next)) fail("LeftDomain", "solution left the domain near " + where(xn, next));
    // Earliest sign change among the events, refined by partial steps from (x, y).
    int fired = -1;
    double best = std::numeric_limits<double>::infinity();
    State1D best_y;
    for (std::size_t m = 0; m < ne; ++m) {
      const int sn = sign_of(sys.events[m](xn, next));
      if (last[m] == 0) {
        last[m] = sn;
        continue;
      }
      if (sn == last[m]) continue;
      double lo = 0, hi = h;
      State1D mid;
      while (hi - lo > opt.event_tol) {
        const double dm = 0.5 * (lo + hi);
        mid = y;
        stepper.do_step(rhs, mid, x, dm);
        if (sign_of(sys.events[m](x + dm, mid)) == last[m]) lo = dm;
        else hi = dm;
      }
      mid = y;
      stepper.do_step(rhs, mid, x, hi);
      if (x + hi < best) {
        best = x + hi;
        best_y = mid;
        fired = static_cast<int>(m);
      }
    }
    if (fired >= 0) {
      sol.events.push_back({fired, best, best_y});
      if (opt.stop_at_event) {
        sol.x.push_back(best);
        sol.y.push_back(best_y);
        return sol;
      }
      for (std::size_t m = 0; m < ne; ++m) last[m] = sign_of(sys.events[m](xn, next));
    }
    x = xn;
    y.swap(next);
    ++k;
    if (k % opt.sample_every == 0 || x >= x1) {
      sol.x.push_back(x);
      sol.y.push_back(y);
    }
  }
  if (opt.require_event && sol.events.empty())
    fail("NoEventInRange", "no event before x=" + std::to_string(x1));
  return sol;
}

OdeSystem cut_system() {
  OdeSystem s;
  s.dim = 4;
  s.names = {"u", "v", "w", "z"};
  s.rhs = [](double, const State1D& y, State1D& dy) {
    const double u = y[0], v = y[1], w = y[2];
    const double sp = 3 * u + 2 * v + w;
    const double d = sp * sp + 6 * sp * u + 12 * u * v;
    dy[0] = -6 * u * (6 * u + sp) / d;
    dy[1] = (36 * u * u - 12 * u * v - sp * sp - 4 * sp * v) / d;
    dy[2] = 2 * (-6 * u * w + 2 * sp * v - sp * w) / d;
    dy[3] = (6 * sp * u + 24 * u * w + sp * sp + 4 * sp * w + 36 * u * v) / d;
  };
  s.domain = [](double, const State1D& y) { return 3 * y[0] + 2 * y[1] + y[2] > 0; };
  s.events.push_back([](double, const State1D& y) { return y[1]; });
  return s;
}

State1D cut_initial() { return {1.0, 0.0, 0.0, 0.0}; }

CutConstants cut_constants(double h) {
  SolveOptions opt;
  opt.h = h;
  opt.require_event = true;
  opt.sample_every = 1000;
  const Solution sol = rk4_solve(cut_system(), cut_initial(), 0.0, 2.0, opt);
  const EventRoot& e = sol.events.front();
  CutConstants c;
  c.x0 = e.x;
  c.u = e.y[0];
  c.v = e.y[1];
  c.w = e.y[2];
  c.z = e.y[3];
  c.c = c.z + 1.5 * c.u + 1.5 * c.w;
  return c;
}

CutSelections cut_selections(double y00, double y01, double y11) {
  const double s = 3 * y00 + 2 * y01 + y11;
  const double d = s * s + 6 * s * y00 + 12 * y00 * y01;
  return {(s * s - 12 * y00 * y01) / d, 6 * s * y00 / d, 24 * y00 * y01 / d};
}

Mix deprioritised_mix(std::span<const double> f1, std::span<const double> f2, int k1, double eps) {
  if (f1.size() != f2.size()) fail("BadParams", "fields differ in length");
  const double alpha = f2[k1], beta = -f1[k1];
  if (!(alpha + beta > eps))
    fail("DegenerateMix", "alpha + beta = " + std::to_string(alpha + beta) + " is not above " +
                              std::to_string(eps));
  Mix m;
  m.p1 = alpha / (alpha + beta);
  m.p2 = beta / (alpha + beta);
  m.f.resize(f1.size());
  for (std::size_t j = 0; j < f1.size(); ++j) m.f[j] = m.p1 * f1[j] + m.p2 * f2[j];
  m.f[k1] = 0.0;  // exact by construction
  return m;
}

std::vector<State1D> euler_recurrence(const StepProbability& p, const FieldFn& f, int R, State1D z0,
                                      long long N) {
  std::vector<State1D> out;
  out.reserve(N + 1);
  out.push_back(std::move(z0));
  for (long long t = 1; t <= N; ++t) {
    const State1D& z = out.back();
    State1D next = z;
    std::span<const double> zr(z.data(), R);
    for (int i = 0; i < R; ++i) {
      const double w = p(t, i) * z[i];
      if (w == 0) continue;
      std::vector<double> fi;
      try {
        fi = f(i, zr);
      } catch (const Error& e) {
        if (e.kind() == "OutsideDomain") fail("OutsideDomain", "step " + std::to_string(t) + ": " + e.what());
        throw;
      }
      for (std::size_t j = 0; j < next.size() && j < fi.size(); ++j) next[j] += w * fi[j];
    }
    out.push_back(std::move(next));
  }
  return out;
}

OdeSystem chunky_rhs(std::function<double(double x, int type)> p, FieldFn f, int R, int s) {
  return deprioritised_rhs(
      [p = std::move(p)](double x, const State1D& y, int i) { return p(x, i) * y[i]; }, std::move(f), R, s);
}

OdeSystem deprioritised_rhs(std::function<double(double x, const State1D& y, int type)> p, FieldFn f, int R,
                            int s) {
  OdeSystem sys;
  sys.dim = R + s;
  sys.rhs = [p = std::move(p), f = std::move(f), R](double x, const State1D& y, State1D& dy) {
    std::fill(dy.begin(), dy.end(), 0.0);
    std::span<const double> yr(y.data(), R);
    for (int i = 0; i < R; ++i) {
      const double w = p(x, y, i);
      if (w == 0) continue;
      const std::vector<double> fi = f(i, yr);
      for (std::size_t j = 0; j < dy.size() && j < fi.size(); ++j) dy[j] += w * fi[j];
    }
  };
  return sys;
}

OdeSystem cubic_is_system(bool improved, double stop_y3) {
  OdeSystem sys;
  sys.dim = 4;
  sys.names = {"y1", "y2", "y3", "y4"};
  sys.rhs = [improved](double, const State1D& y, State1D& dy) {
    const double p = 2 * y[1] / (y[0] + 2 * y[1] + 3 * y[2]);
    const auto a = cubic_is_op1(p);
    const auto b = improved ? cubic_is_improved_op2(p) : cubic_is_base_op2(p);
    const Mix m = deprioritised_mix(a, b, 0);
    for (int k = 0; k < 4; ++k) dy[k] = m.f[k];
  };
  sys.domain = [](double, const State1D& y) { return y[0] + 2 * y[1] + 3 * y[2] > 0; };
  sys.events.push_back([stop_y3](double, const State1D& y) { return y[2] - stop_y3; });
  return sys;
}

double cubic_is_closed_form() {
  return 3 + 1.5 * std::log(2.0) - 7.5 * std::sqrt(2.0) * std::atan(std::sqrt(2.0) / 4);
}

CubicConstant cubic_is_constant(bool improved) {
  using boost::math::quadrature::gauss_kronrod;
  auto base = [](double p) { return 3 * (1 - p) * (2 * p * p + 3 * p + 1) / (2 * (p * p + 2 * p + 3)); };
  auto better = [](double p) {
    const double num = 2 * std::pow(p, 5) + 9 * std::pow(p, 4) + 18 * std::pow(p, 3) + 22 * p * p + 8 * p + 1;
    const double den = std::pow(p, 4) + 4 * std::pow(p, 3) + 8 * p * p + 14 * p + 3;
    return 3 * (1 - p) * num / (2 * den * (1 + p));
  };
  CubicConstant c;
  if (improved) {
    c.value = gauss_kronrod<double, 61>::integrate(better, 0.0, 1.0, 15, 1e-15, &c.quadrature_error);
    c.closed_form = std::numeric_limits<double>::quiet_NaN();
  } else {
    c.value = gauss_kronrod<double, 61>::integrate(base, 0.0, 1.0, 15, 1e-15, &c.quadrature_error);
    c.closed_form = cubic_is_closed_form();
  }
  return c;
}

namespace {

// Mixed min-degree system over the full type space plus outputs.
constexpr double kMixFloor = 1e-9;

struct MinDegreeMix {
  std::shared_ptr<const AlgorithmSpec> spec;
  int t1 = 0, t2 = 0, t3 = 0, R = 0;

  explicit MinDegreeMix(const AlgorithmSpec& s) : spec(std::make_shared<AlgorithmSpec>(s)) {
    t1 = s.types.id(0, 1);
    t2 = s.types.id(0, 2);
    t3 = s.types.id(0, 3);
    R = s.types.count();
  }

  Mix mix(const State1D& y) const {
    std::span<const double> yr(y.data(), R);
    const auto f1 = eval_transition_generic(*spec, t1, yr).f;
    const auto f2 = eval_transition_generic(*spec, t2, yr).f;
    return deprioritised_mix(f1, f2, t1, kMixFloor);
  }

  // alpha + beta of the mix; the mix exists while this is positive.
  double margin(const State1D& y) const {
    std::span<const double> yr(y.data(), R);
    return eval_transition_generic(*spec, t2, yr).f[t1] - eval_transition_generic(*spec, t1, yr).f[t1];
  }

  OdeSystem system(double burn_in, double stop_points) const {
    OdeSystem sys;
    sys.dim = R + spec->output_count();
    auto self = *this;
    const TypeSpace ts = spec->types;
    const int R0 = R;
    auto points = [ts, R0](const State1D& y) {
      double s = 0;
      for (int t = 0; t < R0; ++t) s += ts.degree(t) * y[t];
      return s;
    };
    sys.rhs = [self, burn_in, points, stop_points](double x, const State1D& y, State1D& dy) {
      // Stages that overshoot the stopping surface see a frozen field.
      if (points(y) < 0.5 * stop_points) {
        std::fill(dy.begin(), dy.end(), 0.0);
        return;
      }
      if (x < burn_in) {
        const auto f3 = eval_transition_generic(*self.spec, self.t3, std::span<const double>(y.data(), self.R)).f;
        std::copy(f3.begin(), f3.end(), dy.begin());
        return;
      }
      std::span<const double> yr(y.data(), self.R);
      const auto f1 = eval_transition_generic(*self.spec, self.t1, yr).f;
      const auto f2 = eval_transition_generic(*self.spec, self.t2, yr).f;
      if (f2[self.t1] - f1[self.t1] <= kMixFloor) {
        std::fill(dy.begin(), dy.end(), 0.0);
        return;
      }
      const Mix m = deprioritised_mix(f1, f2, self.t1, kMixFloor);
      std::copy(m.f.begin(), m.f.end(), dy.begin());
    };
    sys.events.push_back([points, stop_points](double, const State1D& y) { return points(y) - stop_points; });
    // A long burn-in leaves degree-1 mass behind, and the mix can run out before the points do.
    sys.events.push_back([self, burn_in, points, stop_points](double x, const State1D& y) {
      if (x < burn_in || points(y) < 0.5 * stop_points) return 1.0;
      return self.margin(y) - 2 * kMixFloor;
    });
    return sys;
  }
};

State1D all_full_degree(const AlgorithmSpec& s) {
  State1D y(s.types.count() + s.output_count(), 0.0);
  y[s.types.id(0, s.r)] = 1.0;
  return y;
}

}  // namespace

double min_degree_is_mixed_value(double h) {
  const AlgorithmSpec s = make_algorithm("min_degree_is", {});
  MinDegreeMix mm(s);
  SolveOptions opt;
  opt.h = h;
  opt.sample_every = 100;
  // Stop just short of the singular end point s -> 0.
  const Solution sol = rk4_solve(mm.system(0.0, 1e-6), all_full_degree(s), 0.0, 2.0, opt);
  return sol.y.back()[mm.R + s.set_colour];
}

Deprioritised deprioritised_schedule(const AlgorithmSpec& spec, double eps) {
  if (!(eps > 0 && eps < 0.5)) fail("BadParams", "burn-in length must lie in (0, 0.5)");
  const TypeSpace ts = spec.types;
  if (spec.name == "min_degree_is" && spec.r == 3) {
    MinDegreeMix mm(spec);
    SolveOptions opt;
    opt.h = 1e-3;
    const Solution sol = rk4_solve(mm.system(eps, 1e-6), all_full_degree(spec), 0.0, 2.0, opt);
    // Tabulate the weights along the solution.
    auto xs = std::make_shared<std::vector<double>>();
    auto w1 = std::make_shared<std::vector<double>>();
    for (std::size_t k = 0; k < sol.x.size(); ++k) {
      if (sol.x[k] < eps) continue;
      double p1;
      try {
        p1 = mm.mix(sol.y[k]).p1;
      } catch (const Error&) {
        break;
      }
      xs->push_back(sol.x[k]);
      w1->push_back(p1);
    }
    const int t1 = mm.t1, t2 = mm.t2, t3 = mm.t3;
    return Deprioritised{[=](double x, int type) {
      if (x < eps) return type == t3 ? 1.0 : 0.0;
      if (xs->empty() || x > xs->back()) return 0.0;
      const auto k = std::lower_bound(xs->begin(), xs->end(), x) - xs->begin();
      const double p1 = (*w1)[std::max<long>(0, k - 1)];
      if (type == t1) return p1;
      if (type == t2) return 1 - p1;
      return 0.0;
    }};
  }
  if (spec.name == "cubic_maxcut") {
    const CutConstants cc = cut_constants(1e-4);
    SolveOptions opt;
    opt.h = 1e-4;
    opt.sample_every = 10;
    auto sol = std::make_shared<Solution>(rk4_solve(cut_system(), cut_initial(), 0.0, 2.0, opt));
    const int c00 = rb_colour(spec, 0, 0), c10 = rb_colour(spec, 1, 0), c01 = rb_colour(spec, 0, 1),
              c02 = rb_colour(spec, 0, 2);
    const double end = cc.x0;
    return Deprioritised{[=](double x, int type) {
      const int c = ts.colour(type), d = ts.degree(type);
      if (x < eps) return (c == c00 && d == 3) ? 1.0 : 0.0;
      if (x >= end) return 0.0;
      const State1D y = sol->at(x);
      const CutSelections p = cut_selections(y[0], y[1], y[2]);
      if (c == c01 && d == 2) return p.p01;
      if (c == c10 && d == 2) return p.p10;
      if (c == c02 && d == 1) return p.p02;
      return 0.0;
    }};
  }
  fail("BadParams", "no deprioritised schedule for " + spec.name + " with r=" + std::to_string(spec.r));
}

}  // namespace localdel
