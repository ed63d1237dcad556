#pragma once

#include <string>
#include <utility>
#include <vector>

namespace localdel {

// Types are (transient colour, degree) pairs packed into one integer.
struct TypeSpace {
  int colours = 1;
  int max_degree = 0;

  int count() const { return colours * (max_degree + 1); }
  int id(int colour, int degree) const { return colour * (max_degree + 1) + degree; }
  int colour(int type) const { return type / (max_degree + 1); }
  int degree(int type) const { return type % (max_degree + 1); }
};

// Transient colours come first in `transient`, the last one being the terminal
// colour; output colours likewise end with the clash colour.
struct Palette {
  std::vector<std::string> transient;
  std::vector<std::string> output;

  int terminal() const { return static_cast<int>(transient.size()) - 1; }
  int clash() const { return static_cast<int>(output.size()) - 1; }
  int output_index(const std::string& name) const;
  int transient_index(const std::string& name) const;
};

std::string type_name(const Palette& pal, const TypeSpace& ts, int type);

// A paint is a transient colour (>= 0) or an output colour k encoded as -(k+1).
constexpr int output_paint(int k) { return -k - 1; }
constexpr bool is_output_paint(int paint) { return paint < 0; }
constexpr int output_of(int paint) { return -paint - 1; }

inline constexpr int kDiamond = -1;

struct QVertex {
  int type = 0;
  int parent = -1;  // label of the parent, -1 at the root
  int depth = 0;
  std::vector<int> slots;  // the multiset l_i: vertex types or kDiamond
};

// Rooted exploration record. Labels are indices into `v`, in discovery order.
struct QueryGraph {
  std::vector<QVertex> v;
  std::vector<std::pair<int, int>> closures;  // edges that closed a cycle

  int size() const { return static_cast<int>(v.size()); }
  int diamonds(int i) const;
  int count_slots(int i, int type) const;
  bool is_tree() const { return closures.empty(); }
  std::vector<int> children(int i) const;
  std::string key() const;  // canonical string; labels are canonical already
};

// Outcome of one application of a local subrule.
struct Action {
  int vertex = -1;         // -1 stops the exploration
  int type = kDiamond;     // which open adjacency of `vertex` to query
  bool stop() const { return vertex < 0; }
  static Action stop_action() { return {}; }
  static Action query(int vertex, int type) { return {vertex, type}; }
};

template <class T>
struct Weighted {
  double p = 1.0;
  T value;
};

class LocalSubrule {
public:
  virtual ~LocalSubrule() = default;
  virtual void choose(const QueryGraph& h, const TypeSpace& ts,
                      std::vector<Weighted<Action>>& out) const = 0;
};

struct Recolouring {
  std::vector<int> vertex_paint;             // one per query-graph vertex
  std::vector<std::vector<int>> slot_paint;  // per vertex, per slot (ignored at kDiamond)
  std::vector<double> extra;                 // rule-specific output increments
};

class RecolouringRule {
public:
  virtual ~RecolouringRule() = default;
  virtual void recolour(const QueryGraph& h, const TypeSpace& ts,
                        std::vector<Weighted<Recolouring>>& out) const = 0;
};

}  // namespace localdel
