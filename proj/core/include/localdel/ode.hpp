#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "localdel/lda.hpp"
#include "localdel/transition.hpp"

namespace localdel {

using State1D = std::vector<double>;

struct OdeSystem {
  int dim = 0;
  std::vector<std::string> names;
  std::function<void(double x, const State1D& y, State1D& dy)> rhs;
  // Empty means everywhere. Leaving the domain throws LeftDomain.
  std::function<bool(double x, const State1D& y)> domain;
  // Integration stops at the first sign change of any of these.
  std::vector<std::function<double(double x, const State1D& y)>> events;
};

struct EventRoot {
  int index = -1;
  double x = 0;
  State1D y;
};

struct SolveOptions {
  double h = 1e-4;
  long long sample_every = 1;  // keep every k-th step; the endpoint is always kept
  bool stop_at_event = true;
  bool require_event = false;  // NoEventInRange if none fires before x1
  double event_tol = 1e-12;
};

struct Solution {
  std::vector<double> x;
  std::vector<State1D> y;
  std::vector<EventRoot> events;

  // Linear interpolation on the sample grid, clamped at the ends.
  State1D at(double x) const;
  std::string to_csv(const std::vector<std::string>& names) const;
};

// Fixed-step classical RK4. Throws LeftDomain, NoEventInRange.
Solution rk4_solve(const OdeSystem& sys, State1D y0, double x0, double x1, const SolveOptions& opt = {});

// Max cut system in (u, v, w, z) with event v = 0.
OdeSystem cut_system();
State1D cut_initial();

struct CutConstants {
  double x0 = 0, u = 0, v = 0, w = 0, z = 0, c = 0;
};
CutConstants cut_constants(double h = 1e-4);

// Selection weights for types 01, 10 and 02 as functions of (y00, y01, y11).
struct CutSelections {
  double p01 = 0, p10 = 0, p02 = 0;
};
CutSelections cut_selections(double y00, double y01, double y11);

struct Mix {
  double p1 = 0;  // weight of the operation on a degree-1 root
  double p2 = 0;
  std::vector<double> f;
};
// Weights making the degree-1 coordinate k1 stationary. Throws DegenerateMix.
Mix deprioritised_mix(std::span<const double> f1, std::span<const double> f2, int k1, double eps = 1e-12);

// z_j(t) = z_j(t-1) + sum_i p(t, i) z_i(t-1) f_{j,i}(z(t-1)) for t = 1..N.
// Throws OutsideDomain naming the step.
using StepProbability = std::function<double(long long t, int type)>;
std::vector<State1D> euler_recurrence(const StepProbability& p, const FieldFn& f, int R, State1D z0,
                                      long long N);

// y_j' = sum_i p_i(x) y_i f_{j,i}(y), dimension R + s.
OdeSystem chunky_rhs(std::function<double(double x, int type)> p, FieldFn f, int R, int s);
// y_j' = sum_i p_i(x, y) f_{j,i}(y).
OdeSystem deprioritised_rhs(std::function<double(double x, const State1D& y, int type)> p, FieldFn f, int R,
                            int s);

// Cubic independent set with the hand-derived fields, coordinates (y1, y2, y3, y4),
// degree-1 coordinate held at zero by mixing; event y3 = stop_y3.
OdeSystem cubic_is_system(bool improved, double stop_y3 = 1e-4);

struct CubicConstant {
  double value = 0;
  double closed_form = 0;  // base variant only, NaN otherwise
  double quadrature_error = 0;
};
CubicConstant cubic_is_constant(bool improved);
double cubic_is_closed_form();

// Native greedy independent set on cubic graphs via mixing of the generic fields;
// returns the terminal output density.
double min_degree_is_mixed_value(double h = 1e-4);

// Relative selection functions for the deprioritised mode, burn-in of length eps.
// Supported: min_degree_is with r = 3, cubic_maxcut. Throws BadParams otherwise.
Deprioritised deprioritised_schedule(const AlgorithmSpec& spec, double eps);

}  // namespace localdel
