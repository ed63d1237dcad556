#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace localdel {

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Multigraph with loops and parallel edges. Vertices are never reindexed:
// deletion marks a vertex dead and records its output colour.
class ColouredGraph {
public:
  static constexpr int kNeutral = 0;

  explicit ColouredGraph(int n = 0);

  int order() const { return static_cast<int>(alive_.size()); }
  int size() const { return present_edges_; }
  int edge_slots() const { return static_cast<int>(edges_.size()); }

  int add_edge(int u, int v);
  void remove_edge(int e);
  bool present(int e) const { return present_[e] != 0; }
  Edge edge(int e) const { return edges_[e]; }
  int other(int e, int v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }

  // Incident present edge ids; a loop appears twice.
  const std::vector<int>& incident(int v) const { return inc_[v]; }
  int degree(int v) const { return static_cast<int>(inc_[v].size()); }
  int max_degree() const;

  bool alive(int v) const { return alive_[v] != 0; }
  int colour(int v) const { return colour_[v]; }
  void set_colour(int v, int c) { colour_[v] = c; }
  // Marks v dead with the given output colour and deletes its incident edges.
  void kill(int v, int output_colour);

  std::vector<Edge> edges() const;
  bool is_simple() const;
  bool is_regular(int r) const;
  std::string audit() const;  // empty when consistent

private:
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> present_;
  std::vector<std::vector<int>> inc_;
  std::vector<std::uint8_t> alive_;
  std::vector<int> colour_;
  int present_edges_ = 0;
};

inline constexpr int kInfiniteGirth = -1;

// Length of a shortest cycle (loop = 1, parallel pair = 2), kInfiniteGirth for forests.
int girth(const ColouredGraph& g);
// Shortest cycle through v, or kInfiniteGirth; BFS is cut off beyond max_len.
int shortest_cycle_through(const ColouredGraph& g, int v, int max_len);
// Number of vertices lying on some cycle of length <= L.
int count_short_cycles(const ColouredGraph& g, int L);
// True when some cycle has length < g; cheaper than girth() for small g.
bool has_cycle_shorter_than(const ColouredGraph& g, int len);

std::vector<std::string> cage_names();
ColouredGraph cage(const std::string& name);
int cage_girth(const std::string& name);

enum class GraphFormat { EdgeList, LCF };

ColouredGraph parse_graph(std::string_view text, GraphFormat format);
ColouredGraph parse_lcf(std::string_view text);
std::string serialize_graph(const ColouredGraph& g);

}  // namespace localdel
