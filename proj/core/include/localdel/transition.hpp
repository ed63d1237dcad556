#pragma once

#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "localdel/lda.hpp"

namespace localdel {

struct EvalOptions {
  double prune = 1e-12;     // branches below this probability count as residual
  int max_vertices = 512;   // exploration cap as a safety net
  double domain_eps = 1e-6; // D(eps): sum_k d(k) y_k >= eps
  bool want_g = false;
};

struct TransitionResult {
  std::vector<double> f;              // R type components, then one per output function
  double residual = 0;                // probability mass not enumerated
  std::map<std::string, double> g;    // query-graph key -> probability (when requested)
  long long leaves = 0;
};

// Expected one-step change from an operation on a root of type `type`, in the
// pairing model with scaled type densities y (size R), trees only.
// Throws OutsideDomain.
TransitionResult eval_transition_generic(const AlgorithmSpec& spec, int type, std::span<const double> y,
                                         const EvalOptions& opt = {});

// f(i, y) for every i at once, size R x (R + s).
using FieldFn = std::function<std::vector<double>(int type, std::span<const double> y)>;
FieldFn generic_field(const AlgorithmSpec& spec, EvalOptions opt = {});

// Hand-derived fields.
// Max cut: colours ordered 00,10,01,20,11,02 (vertex kl has degree 3-k-l).
double fcuts(int k, int l, int i, int j, std::span<const double> y6);
// Cubic independent set, degree classes (1,2,3), assuming y1 = 0; p = 2y2 / (2y2 + 3y3).
std::array<double, 4> cubic_is_op1(double p);             // (f1, f2, f3, f_out)
std::array<double, 4> cubic_is_base_op2(double p);
std::array<double, 4> cubic_is_improved_op2(double p);
// The improved Op2 split into the four cases (odd, ee, eo, oo), each (f1, f2, f3, f_out).
std::array<std::array<double, 4>, 4> cubic_is_improved_cases(double p);

}  // namespace localdel
