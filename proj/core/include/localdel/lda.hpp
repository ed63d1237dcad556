#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "localdel/query_graph.hpp"
#include "localdel/rng.hpp"
#include "localdel/state.hpp"

namespace localdel {

// Highest-priority nonempty rank wins. rank[type] < 0 means never selected.
// FairClass: within a rank, draw one of its classes (cls[type]) uniformly,
// empty ones included; an empty draw defers to lower ranks, and the rank is
// used anyway when nothing lower is left.
struct Prioritised {
  enum class Tie { UniformVertex, FairClass };
  std::vector<int> rank;
  Tie tie = Tie::UniformVertex;
  std::vector<int> cls;
};

// Each vertex of type i joins S_t independently with probability p(t, i).
struct Chunky {
  std::function<double(long long t, int type)> p;
};

// One vertex per step: type i with probability p(x, i), x = (t - 1) / n.
struct Deprioritised {
  std::function<double(double x, int type)> p;
};

using SelectionRule = std::variant<Prioritised, Chunky, Deprioritised>;

struct AlgorithmSpec {
  std::string name;
  int r = 3;
  int depth = 1;       // D
  int truncation = 0;  // d for path rules, 0 if unbounded exploration is not used
  Palette palette;
  TypeSpace types;
  std::shared_ptr<const LocalSubrule> subrule;
  std::shared_ptr<const RecolouringRule> recolouring;
  SelectionRule selection;
  std::vector<std::string> extra_outputs;  // names of rule-specific W components
  int set_colour = 0;                      // output colour forming the main output set
  bool maximise = false;                   // bisection: large rather than small

  int output_count() const {
    return static_cast<int>(palette.output.size() + extra_outputs.size());
  }
  std::vector<std::string> output_names() const;
  bool terminal(int type) const { return types.colour(type) == palette.terminal(); }
};

struct QueryCopy {
  int root = -1;
  QueryGraph h;
  std::vector<int> host;                  // query vertex -> host vertex
  std::vector<int> parent_half;           // half-edge at host[i] toward its parent
  std::vector<std::vector<int>> bound;    // per slot: half-edge at host[i], -1 at kDiamond
  std::vector<std::vector<int>> unbound;  // half-edges of host[i] not yet queried
  std::vector<int> closure_half;          // one half of each closure edge
  std::vector<unsigned char> closed;      // vertex is an endpoint of a closure
  Recolouring paint;
};

struct StepRecord {
  long long selected = 0;
  long long clashes = 0;
  long long preclashes = 0;
  std::vector<double> w;  // increments
};

struct Trajectory {
  std::vector<std::string> type_names;
  std::vector<std::string> output_names;
  std::vector<long long> step;
  std::vector<std::vector<long long>> y;
  std::vector<std::vector<double>> w;
  std::vector<long long> clashes;
  std::vector<long long> preclashes;

  std::string to_csv() const;
};

struct StopRule {
  long long max_steps = -1;  // < 0: unbounded
  // Called after each step; returning true ends the run.
  std::function<bool(const State&, long long t)> predicate;
};

struct RunOptions {
  long long record_every = 1;  // trajectory stride; the last step is always recorded
  bool count_preclashes = false;
  bool record = true;
};

struct RunResult {
  Trajectory trajectory;
  State state;
  std::vector<double> w;
  long long steps = 0;
  long long clash_total = 0;
  long long preclash_total = 0;
  long long selected_total = 0;
  bool exhausted = false;  // stopped because nothing was selectable
};

class Engine {
public:
  Engine(const AlgorithmSpec& spec, State& state, Rng& rng);

  // Step t is 1-based. Throws Stuck for a deprioritised draw of an empty type.
  std::vector<int> select(long long t);
  QueryCopy build_copy(int v);
  // Number of unordered pairs in s at distance <= 2D.
  long long count_preclashes(const std::vector<int>& s);
  // Clash vertices of the given copies (host ids, sorted).
  std::vector<int> detect_clashes(const std::vector<QueryCopy>& copies);
  // Steps (iii)-(iv) for copies whose paint is already sampled.
  StepRecord finish(std::vector<QueryCopy>& copies);
  StepRecord step(long long t, bool preclashes = false);
  // Steps (ii)-(iv) for a given selection.
  StepRecord step_with(const std::vector<int>& s, bool preclashes = false);
  bool selectable() const;

private:
  const AlgorithmSpec& spec_;
  State& st_;
  Rng& rng_;
  std::vector<std::vector<int>> rank_groups_;
  long long stamp_ = 0;
  std::vector<long long> vstamp_;   // vertex touched this step
  std::vector<int> in_copies_;      // copies containing v this step
  std::vector<int> copy_of_;        // the copy (if exactly one)
  std::vector<int> label_;          // query label within copy_of_
  std::vector<long long> hstamp_;   // copy edge marks, per half-edge
  std::vector<long long> wstamp_;
  std::vector<int> wcount_;
  std::vector<int> wpaint_;
  std::vector<Weighted<Action>> actions_;
  std::vector<Weighted<Recolouring>> paints_;

  void touch(int v);
  void sample_paint(QueryCopy& c);
};

std::vector<int> prioritised_select(const State& st, const Prioritised& rule, Rng& rng);

RunResult run_algorithm(const AlgorithmSpec& spec, State state, const StopRule& stop, Rng& rng,
                        const RunOptions& opt = {});

}  // namespace localdel
