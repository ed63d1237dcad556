#include "localdel/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "localdel/errors.hpp"
#include "localdel/ode.hpp"

namespace localdel {

namespace {

constexpr int kPlain = 0;  // the neutral transient colour in every palette here

Palette set_palette(const std::string& in, const std::string& out) {
  return {{"neutral", "flagged"}, {in, out, "clash"}};
}

// Vertices flagged in `in` get output colour 0, the rest of the query graph
// output colour 1; open adjacencies of an inserted vertex are deleted with
// colour 1, the others just lose the edge.
void paint_by_set(const QueryGraph& h, const std::vector<char>& in, Recolouring& rc) {
  rc.vertex_paint.assign(h.size(), output_paint(1));
  rc.slot_paint.assign(h.size(), {});
  for (int i = 0; i < h.size(); ++i) {
    if (in[i]) rc.vertex_paint[i] = output_paint(0);
    rc.slot_paint[i].assign(h.v[i].slots.size(), in[i] ? output_paint(1) : kPlain);
  }
}

void root_only(const QueryGraph& h, std::vector<Weighted<Recolouring>>& out) {
  std::vector<char> in(h.size(), 0);
  if (h.is_tree()) in[0] = 1;
  Recolouring rc;
  paint_by_set(h, in, rc);
  out.push_back({1.0, std::move(rc)});
}

bool query_diamond(const QueryGraph& h, int i, std::vector<Weighted<Action>>& out) {
  if (h.diamonds(i) == 0) return false;
  out.push_back({1.0, Action::query(i, kDiamond)});
  return true;
}

void stop(std::vector<Weighted<Action>>& out) { out.push_back({1.0, Action::stop_action()}); }

// Native greedy independent set: root in, neighbours out.
class MinDegreeIS : public LocalSubrule, public RecolouringRule {
public:
  void choose(const QueryGraph& h, const TypeSpace&, std::vector<Weighted<Action>>& out) const override {
    if (!query_diamond(h, 0, out)) stop(out);
  }
  void recolour(const QueryGraph& h, const TypeSpace&,
                std::vector<Weighted<Recolouring>>& out) const override {
    root_only(h, out);
  }
};

// Native greedy dominating set: a max-degree neighbour w joins the set and
// w's closed neighbourhood is deleted.
class MinDegreeDom : public LocalSubrule, public RecolouringRule {
public:
  void choose(const QueryGraph& h, const TypeSpace& ts, std::vector<Weighted<Action>>& out) const override {
    if (query_diamond(h, 0, out)) return;
    if (h.size() == 1) {
      int best = -1;
      for (int s : h.v[0].slots)
        if (ts.colour(s) == kPlain) best = std::max(best, ts.degree(s));
      if (best < 0) return stop(out);
      out.push_back({1.0, Action::query(0, ts.id(kPlain, best))});
      return;
    }
    if (!query_diamond(h, 1, out)) stop(out);
  }
  void recolour(const QueryGraph& h, const TypeSpace&,
                std::vector<Weighted<Recolouring>>& out) const override {
    if (h.size() == 1 || !h.is_tree()) return root_only(h, out);
    std::vector<char> in(h.size(), 0);
    in[1] = 1;
    Recolouring rc;
    paint_by_set(h, in, rc);
    out.push_back({1.0, std::move(rc)});
  }
};

// Duckworth-Zito operations with exception rules (1), (2a), (2b).
class DuckworthZito : public LocalSubrule, public RecolouringRule {
public:
  DuckworthZito(int r, bool smaller) : r_(r), smaller_(smaller) {}

  void choose(const QueryGraph& h, const TypeSpace& ts, std::vector<Weighted<Action>>& out) const override {
    if (query_diamond(h, 0, out)) return;
    if (h.size() > 1) {
      if (!query_diamond(h, 1, out)) stop(out);
      return;
    }
    const int i = ts.degree(h.v[0].type);
    int j = -1, count = 0;
    for (int s : h.v[0].slots) {
      if (ts.colour(s) != kPlain) continue;
      const int dj = ts.degree(s);
      if (j < 0 || dj < j) {
        j = dj;
        count = 0;
      }
      if (dj == j) ++count;
    }
    if (j < 0 || j > i) return stop(out);
    if (count >= 2 || i == 2 || (2 < i && i < r_ - 1)) {
      out.push_back({1.0, Action::query(0, ts.id(kPlain, j))});
      return;
    }
    stop(out);
  }

  void recolour(const QueryGraph& h, const TypeSpace& ts,
                std::vector<Weighted<Recolouring>>& out) const override {
    if (h.size() == 1 || !h.is_tree()) return root_only(h, out);
    const int i = ts.degree(h.v[0].type);
    const int j = ts.degree(h.v[1].type);
    const auto& nv = h.v[0].slots;
    const auto& nu = h.v[1].slots;
    bool take_u = false;
    for (int s : nv)
      if (ts.colour(s) == kPlain && ts.degree(s) == j) take_u = true;  // rule (1)
    auto min_deg = [&](const std::vector<int>& s) {
      int m = 1 << 30;
      for (int t : s) m = std::min(m, ts.degree(t));
      return m;
    };
    auto sum_deg = [&](const std::vector<int>& s) {
      int m = 0;
      for (int t : s) m += ts.degree(t);
      return m;
    };
    if (!take_u && i == 2) take_u = smaller_ ? min_deg(nu) < min_deg(nv) : min_deg(nu) > min_deg(nv);
    if (!take_u && 2 < i && i < r_ - 1) take_u = min_deg(nu) > i && sum_deg(nu) < sum_deg(nv);
    std::vector<char> in(h.size(), 0);
    in[take_u ? 1 : 0] = 1;
    Recolouring rc;
    paint_by_set(h, in, rc);
    out.push_back({1.0, std::move(rc)});
  }

private:
  int r_;
  bool smaller_;  // rule (2a) compares with "smaller"
};

// Path rules for cubic graphs; the query graph is a set of degree-2 chains.
struct Chains {
  const QueryGraph& h;
  const TypeSpace& ts;
  int t2, t3;
  Chains(const QueryGraph& g, const TypeSpace& t) : h(g), ts(t), t2(t.id(kPlain, 2)), t3(t.id(kPlain, 3)) {}

  int path_child(int k, const std::vector<char>& mask) const {
    for (int c = k + 1; c < h.size(); ++c)
      if (h.v[c].parent == k && h.v[c].type == t2 && mask[c]) return c;
    return -1;
  }
  std::vector<int> follow(int c, const std::vector<char>& mask) const {
    std::vector<int> out;
    while (c >= 0) {
      out.push_back(c);
      c = path_child(c, mask);
    }
    return out;
  }
  // Path through `centre`: second chain reversed, centre, first chain.
  std::vector<int> path(int centre, const std::vector<char>& mask) const {
    std::vector<int> kids;
    for (int c = centre + 1; c < h.size(); ++c)
      if (h.v[c].parent == centre && h.v[c].type == t2 && mask[c]) kids.push_back(c);
    std::vector<int> a = kids.size() > 0 ? follow(kids[0], mask) : std::vector<int>{};
    std::vector<int> b = kids.size() > 1 ? follow(kids[1], mask) : std::vector<int>{};
    std::vector<int> p(b.rbegin(), b.rend());
    p.push_back(centre);
    p.insert(p.end(), a.begin(), a.end());
    return p;
  }
};

class CubicPathIS : public LocalSubrule, public RecolouringRule {
public:
  explicit CubicPathIS(int d) : d_(d) {}

  void choose(const QueryGraph& h, const TypeSpace& ts, std::vector<Weighted<Action>>& out) const override {
    if (query_diamond(h, 0, out)) return;
    const int t2 = ts.id(kPlain, 2);
    if (ts.degree(h.v[0].type) != 2 || !h.is_tree()) return stop(out);
    if (h.size() == 1) {
      double q = 0;
      for (int s : h.v[0].slots)
        if (s == t2 && d_ >= 1) q += 0.5;
      if (q > 0) out.push_back({q, Action::query(0, t2)});
      if (q < 1) out.push_back({1 - q, Action::stop_action()});
      return;
    }
    const int last = h.size() - 1;
    if (query_diamond(h, last, out)) return;
    if (h.count_slots(last, t2) > 0 && h.size() < d_ + 1) {
      out.push_back({1.0, Action::query(last, t2)});
      return;
    }
    stop(out);
  }

  void recolour(const QueryGraph& h, const TypeSpace& ts,
                std::vector<Weighted<Recolouring>>& out) const override {
    if (ts.degree(h.v[0].type) != 2) return root_only(h, out);
    std::vector<char> in(h.size(), 0);
    if (h.is_tree()) {
      const int x = h.size() - 1;
      for (int k = 0; k <= x; ++k) in[k] = (x - k) % 2 == 0;
    }
    Recolouring rc;
    paint_by_set(h, in, rc);
    out.push_back({1.0, std::move(rc)});
  }

private:
  int d_;
};

class CubicPathISImproved : public LocalSubrule, public RecolouringRule {
public:
  explicit CubicPathISImproved(int d) : d_(d) {}

  void choose(const QueryGraph& h, const TypeSpace& ts, std::vector<Weighted<Action>>& out) const override {
    if (query_diamond(h, 0, out)) return;
    if (ts.degree(h.v[0].type) != 2 || !h.is_tree()) return stop(out);
    Chains ch(h, ts);
    const int w2 = find_w2(h, ch);
    const std::vector<char> sub = subtree(h, w2);
    std::vector<char> phase(h.size());
    for (int k = 0; k < h.size(); ++k) phase[k] = w2 < 0 ? 1 : sub[k];
    for (int k = h.size() - 1; k >= 0; --k)
      if (phase[k] && query_diamond(h, k, out)) return;
    const bool room = h.size() < d_ + 1;
    bool truncated = false;
    for (int k = h.size() - 1; k >= 0; --k)
      if (phase[k] && h.count_slots(k, ch.t2) > 0) {
        if (room) {
          out.push_back({1.0, Action::query(k, ch.t2)});
          return;
        }
        truncated = true;
      }
    if (w2 >= 0 || truncated) return stop(out);
    int m = 0;
    std::vector<int> ends;
    for (int k = 0; k < h.size(); ++k) {
      ++m;
      for (int s : h.v[k].slots) {
        if (s != ch.t3) return stop(out);
        ends.push_back(k);
      }
    }
    if (m % 2 == 1 || ends.size() != 2) return stop(out);
    out.push_back({0.5, Action::query(ends[0], ch.t3)});
    out.push_back({0.5, Action::query(ends[1], ch.t3)});
  }

  void recolour(const QueryGraph& h, const TypeSpace& ts,
                std::vector<Weighted<Recolouring>>& out) const override {
    if (ts.degree(h.v[0].type) != 2) return root_only(h, out);
    std::vector<char> in(h.size(), 0);
    if (h.is_tree()) {
      Chains ch(h, ts);
      const int w2 = find_w2(h, ch);
      const std::vector<char> sub = subtree(h, w2);
      std::vector<char> pmask(h.size());
      for (int k = 0; k < h.size(); ++k) pmask[k] = !sub[k];
      std::vector<int> p = ch.path(0, pmask);
      if (w2 >= 0 && h.v[w2].parent == p.front()) std::reverse(p.begin(), p.end());
      const int m = static_cast<int>(p.size());
      bool w2_in = false;
      if (m % 2 == 1) {
        for (int x = 0; x < m; ++x) in[p[x]] = x % 2 == 0;
      } else {
        if (w2 >= 0) {
          const std::vector<int> q = ch.path(w2, sub);
          const int mq = static_cast<int>(q.size());
          const int t = static_cast<int>(std::find(q.begin(), q.end(), w2) - q.begin());
          for (int x = 0; x < mq; ++x)
            in[q[x]] = mq % 2 == 1 ? x % 2 == 0 : std::abs(x - t) % 2 == 1;
          w2_in = in[w2];
        }
        for (int x = 0; x < m; ++x) in[p[x]] = (m - 1 - x) % 2 == (w2_in ? 1 : 0);
      }
    }
    Recolouring rc;
    paint_by_set(h, in, rc);
    out.push_back({1.0, std::move(rc)});
  }

private:
  int d_;

  static int find_w2(const QueryGraph& h, const Chains& ch) {
    for (int k = 1; k < h.size(); ++k)
      if (h.v[k].type != ch.t2) return k;
    return -1;
  }
  static std::vector<char> subtree(const QueryGraph& h, int root) {
    std::vector<char> sub(h.size(), 0);
    if (root < 0) return sub;
    for (int k = root; k < h.size(); ++k)
      sub[k] = k == root || (h.v[k].parent >= 0 && sub[h.v[k].parent]);
    return sub;
  }
};

// Colours "xy": x red and y blue deleted neighbours. Shared by max cut and bisection.
struct RedBlueColours {
  int limit = 2;
  std::vector<int> red, blue;
  std::map<std::pair<int, int>, int> index;
  int flagged = 0;

  explicit RedBlueColours(int lim) : limit(lim) {
    for (int s = 0; s <= lim; ++s)
      for (int x = s; x >= 0; --x) {
        index[{x, s - x}] = static_cast<int>(red.size());
        red.push_back(x);
        blue.push_back(s - x);
      }
    flagged = static_cast<int>(red.size());
  }
  int at(int x, int y) const {
    auto it = index.find({x, y});
    return it == index.end() ? flagged : it->second;
  }
  std::vector<std::string> names(bool wide) const {
    std::vector<std::string> out;
    for (std::size_t c = 0; c < red.size(); ++c)
      out.push_back(wide ? std::to_string(red[c]) + "_" + std::to_string(blue[c])
                         : std::to_string(red[c]) + std::to_string(blue[c]));
    out.push_back("flagged");
    return out;
  }
};

enum class RedBlueMode { Cut, MinBisection, MaxBisection };

class RedBlue : public LocalSubrule, public RecolouringRule {
public:
  RedBlue(RedBlueColours cols, RedBlueMode mode, bool amalgamate)
      : c_(std::move(cols)), mode_(mode), amalgamate_(amalgamate) {}

  void choose(const QueryGraph& h, const TypeSpace& ts, std::vector<Weighted<Action>>& out) const override {
    if (query_diamond(h, 0, out)) return;
    if (amalgamate_)
      for (int s : h.v[0].slots) {
        const int c = ts.colour(s);
        if (c != c_.flagged && c_.red[c] + c_.blue[c] == c_.limit && ts.degree(s) == 1) {
          out.push_back({1.0, Action::query(0, s)});
          return;
        }
      }
    stop(out);
  }

  void recolour(const QueryGraph& h, const TypeSpace& ts,
                std::vector<Weighted<Recolouring>>& out) const override {
    const int c0 = ts.colour(h.v[0].type);
    const int x = c_.red[c0], y = c_.blue[c0];
    // 0 = red, 1 = blue
    std::vector<int> sides;
    if (x == y) {
      sides = {0, 1};
    } else {
      const bool more_red = x > y;
      const bool blue = mode_ == RedBlueMode::MinBisection ? !more_red : more_red;
      sides = {blue ? 1 : 0};
    }
    for (int side : sides) {
      Recolouring rc;
      rc.vertex_paint.assign(h.size(), output_paint(side));
      rc.slot_paint.assign(h.size(), {});
      double cut = side == 0 ? y : x;
      for (int i = 0; i < h.size(); ++i) rc.slot_paint[i].assign(h.v[i].slots.size(), c_.flagged);
      for (std::size_t j = 0; j < h.v[0].slots.size(); ++j) {
        const int c = ts.colour(h.v[0].slots[j]);
        if (c == c_.flagged) continue;
        rc.slot_paint[0][j] = c_.at(c_.red[c] + (side == 0), c_.blue[c] + (side == 1));
      }
      for (int k = 1; k < h.size(); ++k) {
        const int c = ts.colour(h.v[k].type);
        const int xr = c_.red[c] + (side == 0), yb = c_.blue[c] + (side == 1);
        const bool blue = xr > yb;
        rc.vertex_paint[k] = output_paint(blue ? 1 : 0);
        cut += blue ? xr : yb;
      }
      if (!h.is_tree()) cut = 0;
      rc.extra = {cut};
      out.push_back({1.0 / sides.size(), std::move(rc)});
    }
  }

private:
  RedBlueColours c_;
  RedBlueMode mode_;
  bool amalgamate_;
};

// Induced forest: root purple; neutral neighbours turn blue, blue ones yellow.
class InducedForest : public LocalSubrule, public RecolouringRule {
public:
  void choose(const QueryGraph& h, const TypeSpace&, std::vector<Weighted<Action>>& out) const override {
    if (!query_diamond(h, 0, out)) stop(out);
  }
  void recolour(const QueryGraph& h, const TypeSpace& ts,
                std::vector<Weighted<Recolouring>>& out) const override {
    Recolouring rc;
    rc.vertex_paint.assign(h.size(), output_paint(1));
    rc.vertex_paint[0] = output_paint(0);
    rc.slot_paint.assign(h.size(), {});
    for (int i = 0; i < h.size(); ++i)
      for (int s : h.v[i].slots) rc.slot_paint[i].push_back(ts.colour(s) == 1 ? output_paint(1) : 1);
    out.push_back({1.0, std::move(rc)});
  }
};

Prioritised min_degree_rank(const TypeSpace& ts) {
  Prioritised p;
  p.rank.assign(ts.count(), -1);
  for (int d = 0; d <= ts.max_degree; ++d) p.rank[ts.id(kPlain, d)] = d;
  return p;
}

template <class Rule>
void attach(AlgorithmSpec& s, std::shared_ptr<Rule> rule) {
  s.subrule = rule;
  s.recolouring = rule;
}

void check_r(const std::string& name, int r, int lo, int hi) {
  if (r < lo || r > hi)
    fail("BadParams", name + " needs " + std::to_string(lo) + " <= r <= " + std::to_string(hi) +
                          ", got r=" + std::to_string(r));
}

}  // namespace

std::vector<std::string> algorithm_names() {
  return {"min_degree_is", "min_degree_dom", "dz_is", "cubic_is_path", "cubic_is_path_improved",
          "cubic_maxcut", "bisection", "induced_forest"};
}

int rb_colour(const AlgorithmSpec& spec, int red, int blue) {
  const auto& t = spec.palette.transient;
  const std::string a = std::to_string(red) + std::to_string(blue);
  const std::string b = std::to_string(red) + "_" + std::to_string(blue);
  for (std::size_t c = 0; c < t.size(); ++c)
    if (t[c] == a || t[c] == b) return static_cast<int>(c);
  return spec.palette.terminal();
}

int rb_red(const AlgorithmSpec& spec, int colour) {
  const std::string& s = spec.palette.transient[colour];
  const auto u = s.find('_');
  return u == std::string::npos ? s[0] - '0' : std::stoi(s.substr(0, u));
}

int rb_blue(const AlgorithmSpec& spec, int colour) {
  const std::string& s = spec.palette.transient[colour];
  const auto u = s.find('_');
  return u == std::string::npos ? s[1] - '0' : std::stoi(s.substr(u + 1));
}

AlgorithmSpec make_algorithm(const std::string& name, const AlgorithmParams& params) {
  AlgorithmSpec s;
  s.name = name;
  s.r = params.r;
  if (params.r < 1) fail("BadParams", "r must be positive");
  if (params.d < 0) fail("BadParams", "d must be nonnegative");
  if (name == "min_degree_is") {
    s.palette = set_palette("in", "out");
    s.types = {2, params.r};
    s.depth = 1;
    attach(s, std::make_shared<MinDegreeIS>());
    s.selection = min_degree_rank(s.types);
  } else if (name == "min_degree_dom") {
    s.palette = set_palette("in", "dominated");
    s.types = {2, params.r};
    s.depth = 2;
    attach(s, std::make_shared<MinDegreeDom>());
    s.selection = min_degree_rank(s.types);
  } else if (name == "dz_is") {
    check_r(name, params.r, 3, 1000);
    if (params.dz_rule2a != "larger" && params.dz_rule2a != "smaller")
      fail("BadParams", "dz_rule2a must be \"larger\" or \"smaller\"");
    s.palette = set_palette("in", "out");
    s.types = {2, params.r};
    s.depth = 2;
    attach(s, std::make_shared<DuckworthZito>(params.r, params.dz_rule2a == "smaller"));
    s.selection = min_degree_rank(s.types);
  } else if (name == "cubic_is_path" || name == "cubic_is_path_improved") {
    check_r(name, params.r, 3, 3);
    s.palette = set_palette("in", "out");
    s.types = {2, 3};
    s.truncation = params.d;
    s.depth = params.d + 1;
    if (name == "cubic_is_path")
      attach(s, std::make_shared<CubicPathIS>(params.d));
    else
      attach(s, std::make_shared<CubicPathISImproved>(params.d));
    s.selection = min_degree_rank(s.types);
  } else if (name == "cubic_maxcut" || name == "bisection") {
    const bool cut = name == "cubic_maxcut";
    if (cut) check_r(name, params.r, 3, 3);
    else check_r(name, params.r, 1, 40);
    RedBlueColours cols(cut ? params.r - 1 : params.r);
    s.palette.transient = cols.names(params.r >= 10);
    s.palette.output = {"red", "blue", "clash"};
    s.types = {static_cast<int>(s.palette.transient.size()), params.r};
    s.depth = cut ? 2 : 1;
    s.extra_outputs = {"cut"};
    s.maximise = !cut && params.max_bisection;
    const RedBlueMode mode = cut ? RedBlueMode::Cut
                                 : (params.max_bisection ? RedBlueMode::MaxBisection : RedBlueMode::MinBisection);
    attach(s, std::make_shared<RedBlue>(cols, mode, cut));
    Prioritised p;
    p.rank.assign(s.types.count(), -1);
    p.cls.assign(s.types.count(), -1);
    for (int t = 0; t < s.types.count(); ++t) p.cls[t] = s.types.colour(t);
    for (int c = 0; c < cols.flagged; ++c) {
      const int x = cols.red[c], y = cols.blue[c];
      int rank;
      if (cut) {
        if (x >= 2 || y >= 2) rank = 0;
        else if (x == 1 && y == 0) rank = 1;
        else if (x == 0 && y == 1) rank = 2;
        else if (x == 1 && y == 1) rank = 3;
        else rank = 4;
      } else {
        // Descending x+y, then descending max(x, y); xy and yx share a rank.
        rank = (params.r - (x + y)) * (params.r + 1) + (params.r - std::max(x, y));
        p.tie = Prioritised::Tie::FairClass;
      }
      for (int d = 0; d <= params.r; ++d) p.rank[s.types.id(c, d)] = rank;
    }
    s.selection = p;
  } else if (name == "induced_forest") {
    s.palette = {{"neutral", "blue", "flagged"}, {"purple", "yellow", "clash"}};
    s.types = {3, params.r};
    s.depth = 1;
    attach(s, std::make_shared<InducedForest>());
    Prioritised p;
    p.rank.assign(s.types.count(), -1);
    for (int d = 0; d <= params.r; ++d) {
      p.rank[s.types.id(1, d)] = 0;
      p.rank[s.types.id(0, d)] = 1;
    }
    s.selection = p;
  } else {
    fail("UnknownName", "unknown algorithm " + name);
  }

  if (params.mode == "chunky") {
    if (!(params.epsilon > 0 && params.epsilon <= 1)) fail("BadParams", "epsilon must lie in (0, 1]");
    const double eps = params.epsilon;
    s.selection = Chunky{[eps](long long, int) { return eps; }};
  } else if (params.mode == "deprioritised") {
    s.selection = deprioritised_schedule(s, params.epsilon);
  } else if (params.mode != "prioritised") {
    fail("BadParams", "unknown mode " + params.mode);
  }
  return s;
}

}  // namespace localdel
