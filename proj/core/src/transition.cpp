#include "localdel/transition.hpp"

#include <algorithm>
#include <cmath>

#include "localdel/errors.hpp"

namespace localdel {

namespace {

class Evaluator {
public:
  Evaluator(const AlgorithmSpec& spec, std::span<const double> y, const EvalOptions& opt, TransitionResult& res)
      : spec_(spec), ts_(spec.types), y_(y), opt_(opt), res_(res) {
    const int R = ts_.count();
    q_.assign(R, 0.0);
    double s = 0;
    for (int t = 0; t < R; ++t) s += ts_.degree(t) * y_[t];
    if (!(s >= opt.domain_eps))
      fail("OutsideDomain", "sum of d(k) y_k = " + std::to_string(s) + " is below " +
                                std::to_string(opt.domain_eps));
    for (int t = 0; t < R; ++t) {
      q_[t] = ts_.degree(t) * y_[t] / s;
      if (q_[t] > 0) draws_.push_back(t);
    }
    // Expected change from exposing and deleting a uniformly random second point.
    phi_.assign(R, 0.0);
    for (int t : draws_) {
      phi_[t] -= q_[t];
      phi_[ts_.id(ts_.colour(t), ts_.degree(t) - 1)] += q_[t];
    }
  }

  void run(int type) {
    QVertex root;
    root.type = type;
    root.slots.assign(ts_.degree(type), kDiamond);
    h_.v.push_back(std::move(root));
    dfs(1.0);
  }

private:
  const AlgorithmSpec& spec_;
  const TypeSpace& ts_;
  std::span<const double> y_;
  const EvalOptions& opt_;
  TransitionResult& res_;
  std::vector<double> q_;
  std::vector<int> draws_;
  std::vector<double> phi_;
  QueryGraph h_;

  void dfs(double prob) {
    if (prob < opt_.prune || h_.size() > opt_.max_vertices) {
      res_.residual += prob;
      return;
    }
    std::vector<Weighted<Action>> actions;
    spec_.subrule->choose(h_, ts_, actions);
    if (actions.empty()) {
      leaf(prob);
      return;
    }
    for (const auto& wa : actions) {
      if (wa.p <= 0) continue;
      const Action a = wa.value;
      const double pa = prob * wa.p;
      if (a.stop()) {
        leaf(pa);
        continue;
      }
      auto& slots = h_.v[a.vertex].slots;
      if (a.type == kDiamond) {
        const auto j = std::find(slots.begin(), slots.end(), kDiamond) - slots.begin();
        if (j == static_cast<long>(slots.size()))
          fail("BadParams", "subrule queried an open adjacency that is not there");
        for (int t : draws_) {
          h_.v[a.vertex].slots[j] = t;
          dfs(pa * q_[t]);
        }
        h_.v[a.vertex].slots[j] = kDiamond;
        continue;
      }
      const auto j = std::find(slots.begin(), slots.end(), a.type) - slots.begin();
      if (j == static_cast<long>(slots.size()))
        fail("BadParams", "subrule queried a type that is not there");
      slots.erase(slots.begin() + j);
      QVertex u;
      u.type = a.type;
      u.parent = a.vertex;
      u.depth = h_.v[a.vertex].depth + 1;
      u.slots.assign(ts_.degree(a.type) - 1, kDiamond);
      h_.v.push_back(std::move(u));
      dfs(pa);
      h_.v.pop_back();
      auto& back = h_.v[a.vertex].slots;
      back.insert(back.begin() + j, a.type);
    }
  }

  void kill_edges(int k, double w) {
    for (std::size_t t = 0; t < phi_.size(); ++t) res_.f[t] += k * w * phi_[t];
  }

  void leaf(double prob) {
    ++res_.leaves;
    if (opt_.want_g) res_.g[h_.key()] += prob;
    std::vector<Weighted<Recolouring>> outs;
    spec_.recolouring->recolour(h_, ts_, outs);
    const int R = ts_.count();
    const int nout = static_cast<int>(spec_.palette.output.size());
    auto& f = res_.f;
    for (const auto& wo : outs) {
      const double w = prob * wo.p;
      if (w == 0) continue;
      const Recolouring& rc = wo.value;
      for (int i = 0; i < h_.size(); ++i) {
        const QVertex& qv = h_.v[i];
        const int dia = h_.diamonds(i);
        f[qv.type] -= w;
        const int vp = rc.vertex_paint[i];
        if (is_output_paint(vp)) {
          f[R + output_of(vp)] += w;
          kill_edges(dia, w);
        } else {
          f[ts_.id(vp, dia)] += w;
        }
        for (std::size_t j = 0; j < qv.slots.size(); ++j) {
          const int t = qv.slots[j];
          if (t == kDiamond) continue;
          int paint = j < rc.slot_paint[i].size() ? rc.slot_paint[i][j] : ts_.colour(t);
          if (spec_.terminal(t)) paint = spec_.palette.terminal();
          f[t] -= w;
          if (is_output_paint(paint)) {
            f[R + output_of(paint)] += w;
            kill_edges(ts_.degree(t) - 1, w);
          } else {
            f[ts_.id(paint, ts_.degree(t) - 1)] += w;
          }
        }
      }
      for (std::size_t e = 0; e < rc.extra.size() && e < spec_.extra_outputs.size(); ++e)
        f[R + nout + e] += w * rc.extra[e];
    }
  }
};

}  // namespace

TransitionResult eval_transition_generic(const AlgorithmSpec& spec, int type, std::span<const double> y,
                                         const EvalOptions& opt) {
  const int R = spec.types.count();
  if (static_cast<int>(y.size()) != R)
    fail("BadParams", "density vector has " + std::to_string(y.size()) + " entries, expected " +
                          std::to_string(R));
  if (type < 0 || type >= R) fail("BadParams", "type out of range");
  TransitionResult res;
  res.f.assign(R + spec.output_count(), 0.0);
  Evaluator ev(spec, y, opt, res);
  ev.run(type);
  return res;
}

FieldFn generic_field(const AlgorithmSpec& spec, EvalOptions opt) {
  return [&spec, opt](int type, std::span<const double> y) {
    return eval_transition_generic(spec, type, y, opt).f;
  };
}

double fcuts(int k, int l, int i, int j, std::span<const double> y6) {
  auto idx = [](int a, int b) {
    static const int table[3][3] = {{0, 2, 5}, {1, 4, -1}, {3, -1, -1}};
    return (a < 0 || b < 0 || a + b > 2) ? -1 : table[a][b];
  };
  auto yv = [&](int a, int b) {
    const int t = idx(a, b);
    return t < 0 ? 0.0 : y6[t];
  };
  double s = 0;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) s += (3 - a - b) * yv(a, b);
  const double out = (3 - k - l) * yv(k, l) / s;
  const double blue = (4 - k - l) * yv(k, l - 1) / s - out;
  const double red = (4 - k - l) * yv(k - 1, l) / s - out;
  const double delta = (k == i && l == j) ? 1.0 : 0.0;
  const double change = i > j ? blue : (i < j ? red : 0.5 * (blue + red));
  return -delta + (3 - i - j) * change;
}

std::array<double, 4> cubic_is_op1(double p) {
  return {-1 + 2 * p - p * p, 2 - 6 * p + 2 * p * p, -3 + 4 * p - p * p, 1.0};
}

std::array<double, 4> cubic_is_base_op2(double p) {
  return {2 * p * (2 + p) / (1 + p), (3 - 12 * p + 3 * p * p + 4 * p * p * p) / (1 - p * p),
          2 * (-3 + p + p * p) / (1 + p), 1 / (1 - p * p)};
}

std::array<std::array<double, 4>, 4> cubic_is_improved_cases(double p) {
  const double a = 1 + p, b = 1 - p;
  const double a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a;
  const double p2 = p * p, p3 = p2 * p, p4 = p3 * p, p5 = p4 * p;
  std::array<std::array<double, 4>, 4> c{};
  c[0] = {4 * p * (p2 + 1) / a2, (8 * p5 - 5 * p4 - 6 * p2 - 8 * p + 3) / (b * a3),
          2 * (2 * p - 3) * (1 + p2) / a2, (1 + 3 * p2) / (b * a3)};
  c[1] = {12 * p2 / a4, 8 * p * (3 * p3 - 3 * p2 - 3 * p + 1) / (a5 * b), 4 * p * (3 * p - 5) / a4,
          4 * p * (p2 + 1) / (a5 * b)};
  c[2] = {8 * p3 / a4, 4 * p2 * (4 * p3 - 9 * p2 - 4 * p + 1) / (a5 * b), 8 * p2 * (p - 3) / a4,
          8 * p2 * (p2 + 1) / (a5 * b)};
  c[3] = {8 * p4 / a4, 2 * p3 * (8 * p3 - 9 * p2 - 8 * p + 1) / (a5 * b), 8 * p3 * (p - 2) / a4,
          2 * p3 * (p2 + 3) / (a5 * b)};
  return c;
}

std::array<double, 4> cubic_is_improved_op2(double p) {
  std::array<double, 4> s{};
  for (const auto& c : cubic_is_improved_cases(p))
    for (int k = 0; k < 4; ++k) s[k] += c[k];
  return s;
}

}  // namespace localdel
