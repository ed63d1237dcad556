#include "localdel/lda.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "localdel/errors.hpp"

namespace localdel {

std::vector<std::string> AlgorithmSpec::output_names() const {
  std::vector<std::string> out = palette.output;
  out.insert(out.end(), extra_outputs.begin(), extra_outputs.end());
  return out;
}

std::string Trajectory::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "step";
  for (const auto& t : type_names) {
    std::string s = t;
    std::replace(s.begin(), s.end(), ':', '_');
    os << ",Y_" << s;
  }
  for (const auto& w : output_names) os << ",W_" << w;
  os << ",clashes,preclashes\n";
  for (std::size_t k = 0; k < step.size(); ++k) {
    os << step[k];
    for (long long c : y[k]) os << ',' << c;
    for (double x : w[k]) os << ',' << x;
    os << ',' << clashes[k] << ',' << preclashes[k] << '\n';
  }
  return os.str();
}

namespace {

template <class T>
const T& pick(const std::vector<Weighted<T>>& items, Rng& rng) {
  double total = 0;
  for (const auto& it : items) total += it.p;
  double u = rng.uniform() * total;
  for (const auto& it : items) {
    if (u < it.p) return it.value;
    u -= it.p;
  }
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    if (it->p > 0) return it->value;
  return items.back().value;
}

std::vector<std::vector<int>> group_ranks(const Prioritised& rule) {
  std::map<int, std::vector<int>> by_rank;
  for (std::size_t t = 0; t < rule.rank.size(); ++t)
    if (rule.rank[t] >= 0) by_rank[rule.rank[t]].push_back(static_cast<int>(t));
  std::vector<std::vector<int>> out;
  for (auto& [r, ts] : by_rank) out.push_back(ts);
  return out;
}

int pick_vertex(const State& st, const std::vector<int>& types, Rng& rng) {
  long long total = 0;
  for (int t : types) total += st.type_count(t);
  long long k = static_cast<long long>(rng.below(static_cast<std::uint64_t>(total)));
  for (int t : types) {
    if (k < st.type_count(t)) return st.members(t)[k];
    k -= st.type_count(t);
  }
  return -1;
}

std::vector<int> select_from_groups(const State& st, const std::vector<std::vector<int>>& groups,
                                    const Prioritised& rule, Rng& rng) {
  const std::vector<int>* deferred = nullptr;
  for (const auto& g : groups) {
    long long total = 0;
    for (int t : g) total += st.type_count(t);
    if (total == 0) continue;
    if (rule.tie == Prioritised::Tie::UniformVertex) return {pick_vertex(st, g, rng)};
    std::vector<int> classes;
    for (int t : g)
      if (std::find(classes.begin(), classes.end(), rule.cls[t]) == classes.end()) classes.push_back(rule.cls[t]);
    const int c = classes[rng.index(static_cast<int>(classes.size()))];
    std::vector<int> members;
    long long in_class = 0;
    for (int t : g)
      if (rule.cls[t] == c) {
        members.push_back(t);
        in_class += st.type_count(t);
      }
    if (in_class > 0) return {pick_vertex(st, members, rng)};
    if (!deferred) deferred = &g;
  }
  if (deferred) return {pick_vertex(st, *deferred, rng)};
  return {};
}

}  // namespace

std::vector<int> prioritised_select(const State& st, const Prioritised& rule, Rng& rng) {
  return select_from_groups(st, group_ranks(rule), rule, rng);
}

Engine::Engine(const AlgorithmSpec& spec, State& state, Rng& rng)
    : spec_(spec), st_(state), rng_(rng) {
  if (const auto* p = std::get_if<Prioritised>(&spec_.selection)) rank_groups_ = group_ranks(*p);
  const int n = st_.order();
  vstamp_.assign(n, 0);
  in_copies_.assign(n, 0);
  copy_of_.assign(n, -1);
  label_.assign(n, -1);
  wstamp_.assign(n, 0);
  wcount_.assign(n, 0);
  wpaint_.assign(n, 0);
  hstamp_.assign(st_.pairing().points(), 0);
}

bool Engine::selectable() const {
  if (std::holds_alternative<Prioritised>(spec_.selection)) {
    for (const auto& g : rank_groups_)
      for (int t : g)
        if (st_.type_count(t) > 0) return true;
    return false;
  }
  for (int t = 0; t < spec_.types.count(); ++t)
    if (!spec_.terminal(t) && st_.type_count(t) > 0) return true;
  return false;
}

std::vector<int> Engine::select(long long t) {
  if (const auto* p = std::get_if<Prioritised>(&spec_.selection))
    return select_from_groups(st_, rank_groups_, *p, rng_);
  std::vector<int> s;
  if (const auto* c = std::get_if<Chunky>(&spec_.selection)) {
    for (int ty = 0; ty < spec_.types.count(); ++ty) {
      if (spec_.terminal(ty)) continue;
      const auto& m = st_.members(ty);
      if (m.empty()) continue;
      const double p = c->p(t, ty);
      if (p <= 0) continue;
      if (p >= 1) {
        s.insert(s.end(), m.begin(), m.end());
        continue;
      }
      for (std::uint64_t i = rng_.geometric(p); i < m.size(); i += 1 + rng_.geometric(p))
        s.push_back(m[i]);
    }
    return s;
  }
  const auto& d = std::get<Deprioritised>(spec_.selection);
  const double x = static_cast<double>(t - 1) / st_.order();
  std::vector<double> w(spec_.types.count(), 0.0);
  double total = 0;
  for (int ty = 0; ty < spec_.types.count(); ++ty) {
    if (spec_.terminal(ty)) continue;
    w[ty] = std::max(0.0, d.p(x, ty));
    total += w[ty];
  }
  if (total <= 0) return s;
  double u = rng_.uniform() * total;
  int chosen = -1;
  for (int ty = 0; ty < spec_.types.count(); ++ty) {
    if (w[ty] <= 0) continue;
    chosen = ty;
    if (u < w[ty]) break;
    u -= w[ty];
  }
  if (st_.type_count(chosen) == 0)
    fail("Stuck", "selected type " + type_name(spec_.palette, spec_.types, chosen) +
                      " has no vertices at step " + std::to_string(t));
  s.push_back(st_.members(chosen)[rng_.index(st_.type_count(chosen))]);
  return s;
}

QueryCopy Engine::build_copy(int v) {
  QueryCopy c;
  c.root = v;
  auto add = [&](int u, int parent, int parent_half) {
    QVertex q;
    q.type = st_.type(u);
    q.parent = parent;
    q.depth = parent < 0 ? 0 : c.h.v[parent].depth + 1;
    std::vector<int> un;
    for (int h : st_.live(u))
      if (h != parent_half) un.push_back(h);
    q.slots.assign(un.size(), kDiamond);
    c.h.v.push_back(std::move(q));
    c.host.push_back(u);
    c.parent_half.push_back(parent_half);
    c.bound.emplace_back(un.size(), -1);
    c.unbound.push_back(std::move(un));
    c.closed.push_back(0);
  };
  add(v, -1, -1);
  auto label_of = [&](int u) {
    for (int i = 0; i < c.h.size(); ++i)
      if (c.host[i] == u) return i;
    return -1;
  };
  for (;;) {
    actions_.clear();
    spec_.subrule->choose(c.h, spec_.types, actions_);
    if (actions_.empty()) break;
    const Action a = pick(actions_, rng_);
    if (a.stop()) break;
    const int i = a.vertex;
    auto& slots = c.h.v[i].slots;
    if (a.type == kDiamond) {
      auto& un = c.unbound[i];
      if (un.empty()) fail("BadParams", "subrule queried an open adjacency that is not there");
      const int k = rng_.index(static_cast<int>(un.size()));
      const int h = un[k];
      un[k] = un.back();
      un.pop_back();
      const int m = st_.mate(h, rng_);
      const int j = static_cast<int>(std::find(slots.begin(), slots.end(), kDiamond) - slots.begin());
      slots[j] = st_.type(st_.owner(m));
      c.bound[i][j] = h;
      continue;
    }
    std::vector<int> cand;
    for (std::size_t j = 0; j < slots.size(); ++j)
      if (slots[j] == a.type) cand.push_back(static_cast<int>(j));
    if (cand.empty()) fail("BadParams", "subrule queried a type that is not there");
    const int j = cand[rng_.index(static_cast<int>(cand.size()))];
    const int h = c.bound[i][j];
    slots.erase(slots.begin() + j);
    c.bound[i].erase(c.bound[i].begin() + j);
    const int m = st_.known_mate(h);
    const int u = st_.owner(m);
    const int jj = label_of(u);
    if (jj < 0) {
      add(u, i, m);
      continue;
    }
    // The edge closes a cycle inside the copy; drop m from jj's open adjacencies.
    auto& un = c.unbound[jj];
    if (auto it = std::find(un.begin(), un.end(), m); it != un.end()) {
      un.erase(it);
      auto& s2 = c.h.v[jj].slots;
      auto d = std::find(s2.begin(), s2.end(), kDiamond);
      c.bound[jj].erase(c.bound[jj].begin() + (d - s2.begin()));
      s2.erase(d);
    } else {
      auto& b = c.bound[jj];
      auto it2 = std::find(b.begin(), b.end(), m);
      if (it2 != b.end()) {
        c.h.v[jj].slots.erase(c.h.v[jj].slots.begin() + (it2 - b.begin()));
        b.erase(it2);
      }
    }
    c.h.closures.emplace_back(i, jj);
    c.closed[i] = c.closed[jj] = 1;
    c.closure_half.push_back(h);
  }
  return c;
}

void Engine::sample_paint(QueryCopy& c) {
  paints_.clear();
  spec_.recolouring->recolour(c.h, spec_.types, paints_);
  if (paints_.empty()) fail("BadParams", "recolouring rule produced no outcome");
  c.paint = pick(paints_, rng_);
  auto& p = c.paint;
  if (static_cast<int>(p.vertex_paint.size()) != c.h.size())
    fail("BadParams", spec_.name + ": recolouring does not cover every query vertex");
  p.slot_paint.resize(c.h.size());
  for (int i = 0; i < c.h.size(); ++i) {
    const auto& slots = c.h.v[i].slots;
    p.slot_paint[i].resize(slots.size(), 0);
    for (std::size_t j = 0; j < slots.size(); ++j) {
      if (slots[j] == kDiamond) continue;
      if (spec_.terminal(slots[j])) p.slot_paint[i][j] = spec_.palette.terminal();
    }
  }
  p.extra.resize(spec_.extra_outputs.size(), 0.0);
}

void Engine::touch(int v) {
  if (vstamp_[v] != stamp_) {
    vstamp_[v] = stamp_;
    in_copies_[v] = 0;
    copy_of_[v] = -1;
  }
}

std::vector<int> Engine::detect_clashes(const std::vector<QueryCopy>& copies) {
  ++stamp_;
  for (std::size_t ci = 0; ci < copies.size(); ++ci) {
    const auto& c = copies[ci];
    for (int i = 0; i < c.h.size(); ++i) {
      const int u = c.host[i];
      touch(u);
      ++in_copies_[u];
      copy_of_[u] = static_cast<int>(ci);
      label_[u] = i;
    }
    for (int i = 1; i < c.h.size(); ++i) {
      const int h = c.parent_half[i];
      hstamp_[h] = stamp_;
      hstamp_[st_.known_mate(h)] = stamp_;
    }
    for (int h : c.closure_half) {
      hstamp_[h] = stamp_;
      hstamp_[st_.known_mate(h)] = stamp_;
    }
  }
  std::vector<int> clash;
  for (std::size_t ci = 0; ci < copies.size(); ++ci) {
    const auto& c = copies[ci];
    for (int i = 0; i < c.h.size(); ++i) {
      const int u = c.host[i];
      bool cl = in_copies_[u] >= 2 || c.closed[i];
      if (!cl) {
        for (int h : st_.live(u)) {
          const int x = st_.owner(st_.mate(h, rng_));
          if (vstamp_[x] != stamp_) continue;
          if (in_copies_[x] >= 2 || copy_of_[x] != static_cast<int>(ci) || hstamp_[h] != stamp_) {
            cl = true;
            break;
          }
        }
      }
      if (cl) clash.push_back(u);
    }
  }
  std::sort(clash.begin(), clash.end());
  clash.erase(std::unique(clash.begin(), clash.end()), clash.end());
  return clash;
}

StepRecord Engine::finish(std::vector<QueryCopy>& copies) {
  StepRecord rec;
  rec.w.assign(spec_.output_count(), 0.0);
  const std::vector<int> clash = detect_clashes(copies);
  rec.clashes = static_cast<long long>(clash.size());
  auto is_clash = [&](int u) { return std::binary_search(clash.begin(), clash.end(), u); };

  // Remaining open adjacencies: W multiset of external vertices.
  std::vector<int> external;
  for (const auto& c : copies)
    for (int i = 0; i < c.h.size(); ++i)
      for (std::size_t j = 0; j < c.bound[i].size(); ++j) {
        const int h = c.bound[i][j];
        if (h < 0) continue;
        const int x = st_.owner(st_.known_mate(h));
        if (vstamp_[x] == stamp_) continue;
        if (wstamp_[x] != stamp_) {
          wstamp_[x] = stamp_;
          wcount_[x] = 0;
          external.push_back(x);
        }
        ++wcount_[x];
        wpaint_[x] = c.paint.slot_paint[i][j];
      }

  // Exposed edges go first; kills below remove whatever else is incident.
  auto drop = [&](int h) {
    if (h >= 0 && st_.is_live(h) && st_.known_mate(h) >= 0) st_.delete_edge(h);
  };
  for (const auto& c : copies) {
    for (int i = 1; i < c.h.size(); ++i) drop(c.parent_half[i]);
    for (int h : c.closure_half) drop(h);
    for (const auto& b : c.bound)
      for (int h : b) drop(h);
  }

  auto kill = [&](int u, int k) {
    if (!st_.alive(u)) return;
    st_.kill(u, k, rng_);
    rec.w[k] += 1;
  };
  const int clash_colour = spec_.palette.clash();
  for (auto& c : copies) {
    bool clean = true;
    for (int i = 0; i < c.h.size(); ++i) {
      const int u = c.host[i];
      if (is_clash(u)) {
        clean = false;
        kill(u, clash_colour);
        continue;
      }
      const int p = c.paint.vertex_paint[i];
      if (is_output_paint(p))
        kill(u, output_of(p));
      else
        st_.set_colour(u, p);
    }
    if (clean)
      for (std::size_t e = 0; e < c.paint.extra.size(); ++e)
        rec.w[spec_.palette.output.size() + e] += c.paint.extra[e];
  }
  for (int x : external) {
    if (!st_.alive(x)) continue;
    if (wcount_[x] >= 2) {
      st_.set_colour(x, spec_.palette.terminal());
      continue;
    }
    const int p = wpaint_[x];
    if (is_output_paint(p))
      kill(x, output_of(p));
    else if (st_.colour(x) != spec_.palette.terminal())
      st_.set_colour(x, p);
  }
  return rec;
}

long long Engine::count_preclashes(const std::vector<int>& s) {
  if (s.size() <= 1) return 0;
  const int n = st_.order();
  std::vector<int> idx(n, -1);
  for (std::size_t k = 0; k < s.size(); ++k) idx[s[k]] = static_cast<int>(k);
  std::vector<int> seen(n, -1);
  const int reach = 2 * spec_.depth;
  long long pairs = 0;
  std::vector<int> frontier, next;
  for (std::size_t k = 0; k < s.size(); ++k) {
    frontier.assign(1, s[k]);
    seen[s[k]] = static_cast<int>(k);
    for (int dist = 1; dist <= reach && !frontier.empty(); ++dist) {
      next.clear();
      for (int u : frontier)
        for (int h : st_.live(u)) {
          const int x = st_.owner(st_.mate(h, rng_));
          if (seen[x] == static_cast<int>(k)) continue;
          seen[x] = static_cast<int>(k);
          if (idx[x] > static_cast<int>(k)) ++pairs;
          next.push_back(x);
        }
      frontier.swap(next);
    }
  }
  return pairs;
}

StepRecord Engine::step(long long t, bool preclashes) { return step_with(select(t), preclashes); }

StepRecord Engine::step_with(const std::vector<int>& s, bool preclashes) {
  long long pre = preclashes ? count_preclashes(s) : 0;
  std::vector<QueryCopy> copies;
  copies.reserve(s.size());
  for (int v : s) {
    copies.push_back(build_copy(v));
    sample_paint(copies.back());
  }
  StepRecord rec = finish(copies);
  rec.selected = static_cast<long long>(s.size());
  rec.preclashes = pre;
  return rec;
}

RunResult run_algorithm(const AlgorithmSpec& spec, State state, const StopRule& stop, Rng& rng,
                        const RunOptions& opt) {
  RunResult res;
  res.w.assign(spec.output_count(), 0.0);
  Trajectory& tr = res.trajectory;
  for (int t = 0; t < spec.types.count(); ++t) tr.type_names.push_back(type_name(spec.palette, spec.types, t));
  tr.output_names = spec.output_names();
  long long last_recorded = -1;
  auto record = [&](long long t, long long cl, long long pre) {
    if (!opt.record) return;
    tr.step.push_back(t);
    tr.y.push_back(state.counts());
    tr.w.push_back(res.w);
    tr.clashes.push_back(cl);
    tr.preclashes.push_back(pre);
    last_recorded = t;
  };
  record(0, 0, 0);
  Engine eng(spec, state, rng);
  const bool single = !std::holds_alternative<Chunky>(spec.selection);
  long long t = 0, cl = 0, pre = 0;
  while (stop.max_steps < 0 || t < stop.max_steps) {
    if (!eng.selectable()) {
      res.exhausted = true;
      break;
    }
    StepRecord rec = eng.step(t + 1, opt.count_preclashes);
    if (single && rec.selected == 0) {
      res.exhausted = true;
      break;
    }
    ++t;
    for (std::size_t k = 0; k < rec.w.size(); ++k) res.w[k] += rec.w[k];
    cl = rec.clashes;
    pre = rec.preclashes;
    res.clash_total += rec.clashes;
    res.preclash_total += rec.preclashes;
    res.selected_total += rec.selected;
    if (opt.record_every > 0 && t % opt.record_every == 0) record(t, cl, pre);
    if (stop.predicate && stop.predicate(state, t)) break;
  }
  if (last_recorded != t) record(t, cl, pre);
  res.steps = t;
  res.state = std::move(state);
  return res;
}

}  // namespace localdel
