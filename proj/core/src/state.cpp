#include "localdel/state.hpp"

#include <numeric>
#include <sstream>

#include "localdel/errors.hpp"

namespace localdel {

State State::from_graph(const ColouredGraph& g, const TypeSpace& ts) {
  State s;
  s.ts_ = ts;
  s.pr_ = Pairing::from_graph(g);
  s.lazy_ = false;
  s.init();
  for (int v = 0; v < g.order(); ++v) {
    if (g.colour(v) != ColouredGraph::kNeutral) s.set_colour(v, g.colour(v));
  }
  return s;
}

State State::from_pairing(int n, int r, const TypeSpace& ts) {
  std::vector<int> deg(n, r);
  return from_degrees(deg, ts);
}

State State::from_degrees(std::span<const int> degrees, const TypeSpace& ts) {
  State s;
  s.ts_ = ts;
  s.pr_ = Pairing(degrees);
  s.lazy_ = true;
  s.init();
  return s;
}

void State::init() {
  const int n = pr_.buckets();
  order_.resize(pr_.points());
  std::iota(order_.begin(), order_.end(), 0);
  pos_ = order_;
  deg_.resize(n);
  colour_.assign(n, 0);
  out_.assign(n, -1);
  alive_.assign(n, 1);
  members_.assign(ts_.count(), {});
  mpos_.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    deg_[v] = pr_.bucket_size(v);
    if (deg_[v] > ts_.max_degree) fail("BadParams", "vertex degree exceeds the type space");
    enlist(v);
  }
}

std::vector<long long> State::counts() const {
  std::vector<long long> c(members_.size());
  for (std::size_t t = 0; t < members_.size(); ++t) c[t] = static_cast<long long>(members_[t].size());
  return c;
}

std::span<const int> State::live(int v) const {
  return {order_.data() + pr_.first_point(v), static_cast<std::size_t>(deg_[v])};
}

bool State::is_live(int h) const {
  const int v = owner(h);
  return pos_[h] < pr_.first_point(v) + deg_[v];
}

int State::mate(int h, Rng& rng) {
  if (!pr_.exposed(h)) return pr_.expose_mate(h, rng);
  return pr_.partner(h);
}

void State::unlist(int v) {
  auto& m = members_[type(v)];
  const int i = mpos_[v];
  m[i] = m.back();
  mpos_[m[i]] = i;
  m.pop_back();
  mpos_[v] = -1;
}

void State::enlist(int v) {
  auto& m = members_[type(v)];
  mpos_[v] = static_cast<int>(m.size());
  m.push_back(v);
}

void State::set_colour(int v, int c) {
  if (!alive(v) || colour_[v] == c) return;
  unlist(v);
  colour_[v] = c;
  enlist(v);
}

void State::remove_half(int h) {
  const int v = owner(h);
  const int last = pr_.first_point(v) + deg_[v] - 1;
  const int i = pos_[h];
  const int g = order_[last];
  order_[i] = g;
  pos_[g] = i;
  order_[last] = h;
  pos_[h] = last;
  if (alive(v)) unlist(v);
  --deg_[v];
  if (alive(v)) enlist(v);
}

void State::delete_edge(int h) {
  const int m = pr_.partner(h);
  if (m < 0) fail("BadParams", "deleting an edge whose mate is unknown");
  remove_half(h);
  remove_half(m);
}

void State::kill(int v, int output_colour, Rng& rng) {
  if (!alive(v)) return;
  while (deg_[v] > 0) {
    const int h = order_[pr_.first_point(v)];
    mate(h, rng);
    delete_edge(h);
  }
  unlist(v);
  alive_[v] = 0;
  out_[v] = output_colour;
  ++dead_;
}

void State::complete(Rng& rng) { pr_.expose_all(rng); }

std::string State::audit() const {
  std::ostringstream os;
  long long listed = 0;
  for (const auto& m : members_) listed += static_cast<long long>(m.size());
  if (listed + dead_ != order()) os << "type counts " << listed << " + dead " << dead_ << " != n\n";
  for (int v = 0; v < order(); ++v) {
    if (!alive(v) && deg_[v] != 0) os << "dead vertex " << v << " has live edges\n";
    for (int h : live(v)) {
      const int m = pr_.partner(h);
      if (m >= 0 && !is_live(m)) os << "half-edge " << h << " live but mate " << m << " is not\n";
    }
  }
  return os.str();
}

}  // namespace localdel
