#pragma once

#include <string>
#include <vector>

#include "localdel/lda.hpp"

namespace localdel {

struct AlgorithmParams {
  int r = 3;
  int d = 50;                         // exploration cap for the path rules
  std::string mode = "prioritised";   // prioritised | chunky | deprioritised
  double epsilon = 0.01;              // chunky granularity, deprioritised burn-in
  bool max_bisection = false;
  std::string dz_rule2a = "larger";   // dz_is rule (2a) comparison: larger | smaller
};

std::vector<std::string> algorithm_names();

// Throws UnknownName, BadParams.
AlgorithmSpec make_algorithm(const std::string& name, const AlgorithmParams& params = {});

// Machine-readable list of algorithms and their parameters.
std::string algorithm_registry_json();
// Parses {"r":3,"d":50,"mode":"chunky","epsilon":0.01,"max_bisection":false}; throws BadParams.
AlgorithmParams params_from_json(const std::string& text);
std::string params_to_json(const AlgorithmParams& p);

// Colour indices shared by the max-cut and bisection rules.
int rb_colour(const AlgorithmSpec& spec, int red, int blue);
int rb_red(const AlgorithmSpec& spec, int colour);
int rb_blue(const AlgorithmSpec& spec, int colour);

// Input graph (fully revealed) together with what the run produced.
struct RawOutput {
  ColouredGraph graph;
  std::vector<int> output;   // per vertex: output colour, or -1 if still alive
  std::vector<int> colour;   // per vertex: final transient colour (alive vertices)
  double cut = 0;            // value of the "cut" output function, if any
};

// Reveals the rest of the pairing; state must come from a finished run.
RawOutput collect_output(const AlgorithmSpec& spec, State& state, Rng& rng);

struct Repaired {
  std::vector<int> set;      // independent, dominating or forest set (sorted)
  std::vector<int> side;     // cut / bisection: 0 red, 1 blue per vertex
  long long added = 0;       // vertices the repair assigned
  long long cut = 0;         // bichromatic edges for cut / bisection
};

struct Validation {
  bool ok = true;
  std::string certificate;   // witness of failure, empty when ok
  long long value = 0;       // set size or cut size
};

Repaired repair_output(const AlgorithmSpec& spec, const RawOutput& raw, Rng& rng);
Validation validate_output(const std::string& name, const ColouredGraph& g, const Repaired& rep);

// One complete trial: run to exhaustion (or stop), reveal, repair, validate.
struct Trial {
  RunResult run;
  RawOutput raw;
  Repaired rep;
  Validation val;
  double ratio = 0;  // val.value / n
};
Trial run_trial(const AlgorithmSpec& spec, State state, Rng& rng, const StopRule& stop = {},
                const RunOptions& opt = RunOptions{1, false, false});

// Individual checks, usable on their own. Loops from the pairing model do not
// count against independence; they do close cycles for check_forest.
Validation check_independent(const ColouredGraph& g, const std::vector<int>& set);
Validation check_dominating(const ColouredGraph& g, const std::vector<int>& set);
Validation check_forest(const ColouredGraph& g, const std::vector<int>& set);
Validation check_cut(const ColouredGraph& g, const std::vector<int>& side);
Validation check_bisection(const ColouredGraph& g, const std::vector<int>& side);
// Greedily extends set to a dominating set; preserves independence.
long long greedy_dominate(const ColouredGraph& g, std::vector<int>& set);

}  // namespace localdel
