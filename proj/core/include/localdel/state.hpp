#pragma once

#include <span>
#include <string>
#include <vector>

#include "localdel/graph_core.hpp"
#include "localdel/pairing.hpp"
#include "localdel/query_graph.hpp"
#include "localdel/rng.hpp"

namespace localdel {

// Survival graph of a run, stored as half-edges (pairing points). On the graph
// backend every pair is known up front; on the pairing backend a mate is drawn
// the first time a half-edge is looked across. Deleted half-edges and dead
// vertices are tracked here; the Pairing only records what has been revealed.
class State {
public:
  static State from_graph(const ColouredGraph& g, const TypeSpace& ts);
  // Lazy pairing with every bucket of size r.
  static State from_pairing(int n, int r, const TypeSpace& ts);
  static State from_degrees(std::span<const int> degrees, const TypeSpace& ts);

  int order() const { return static_cast<int>(alive_.size()); }
  const TypeSpace& types() const { return ts_; }
  bool lazy() const { return lazy_; }

  bool alive(int v) const { return alive_[v] != 0; }
  int colour(int v) const { return colour_[v]; }
  int output(int v) const { return out_[v]; }  // output colour of a dead vertex, -1 if alive
  int degree(int v) const { return deg_[v]; }
  int type(int v) const { return ts_.id(colour_[v], deg_[v]); }
  int dead_count() const { return dead_; }

  int type_count(int t) const { return static_cast<int>(members_[t].size()); }
  const std::vector<int>& members(int t) const { return members_[t]; }
  std::vector<long long> counts() const;

  // Live half-edges of v.
  std::span<const int> live(int v) const;
  int owner(int h) const { return pr_.bucket_of(h); }
  bool is_live(int h) const;
  // Mate of a live half-edge; reveals it on the pairing backend.
  int mate(int h, Rng& rng);
  // Mate if already known, else -1.
  int known_mate(int h) const { return pr_.partner(h); }

  void set_colour(int v, int c);
  // Removes the edge through h (mate must be known).
  void delete_edge(int h);
  // Deletes v with the given output colour, revealing and removing its edges.
  void kill(int v, int output_colour, Rng& rng);

  const Pairing& pairing() const { return pr_; }
  // Reveals every remaining pair; afterwards input_graph() is the full input.
  void complete(Rng& rng);
  ColouredGraph input_graph() const { return pr_.to_graph(); }
  std::string audit() const;

private:
  TypeSpace ts_;
  Pairing pr_;
  bool lazy_ = true;
  std::vector<int> order_;  // per vertex range of points, live ones first
  std::vector<int> pos_;    // point -> index in order_
  std::vector<int> deg_;
  std::vector<int> colour_;
  std::vector<int> out_;
  std::vector<unsigned char> alive_;
  std::vector<std::vector<int>> members_;
  std::vector<int> mpos_;
  int dead_ = 0;

  void init();
  void remove_half(int h);
  void unlist(int v);
  void enlist(int v);
};

}  // namespace localdel
