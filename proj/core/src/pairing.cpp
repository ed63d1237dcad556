#include "localdel/pairing.hpp"

#include <numeric>
#include <sstream>

#include "localdel/errors.hpp"

namespace localdel {

Pairing::Pairing(std::span<const int> degrees) {
  long long total = 0;
  for (int d : degrees) {
    if (d < 0) fail("BadParams", "negative bucket size");
    total += d;
  }
  if (total % 2 != 0) fail("OddPointCount", "total point count " + std::to_string(total) + " is odd");
  start_.assign(1, 0);
  for (std::size_t b = 0; b < degrees.size(); ++b) {
    start_.push_back(start_.back() + degrees[b]);
    for (int i = 0; i < degrees[b]; ++i) bucket_.push_back(static_cast<int>(b));
  }
  const int m = static_cast<int>(total);
  partner_.assign(m, -1);
  exposed_.assign(m, 0);
  pool_.resize(m);
  std::iota(pool_.begin(), pool_.end(), 0);
  pool_pos_ = pool_;
  unexposed_ = m;
}

Pairing Pairing::from_graph(const ColouredGraph& g) {
  std::vector<int> deg(g.order());
  for (int v = 0; v < g.order(); ++v) deg[v] = g.degree(v);
  Pairing p(deg);
  std::vector<int> next(p.start_.begin(), p.start_.end() - 1);
  for (const Edge& e : g.edges()) {
    const int a = next[e.u]++;
    const int b = next[e.v]++;
    p.partner_[a] = b;
    p.partner_[b] = a;
  }
  p.pool_.clear();
  std::fill(p.pool_pos_.begin(), p.pool_pos_.end(), -1);
  return p;
}

void Pairing::take_from_pool(int p) {
  const int i = pool_pos_[p];
  if (i < 0) return;
  const int last = pool_.back();
  pool_[i] = last;
  pool_pos_[last] = i;
  pool_.pop_back();
  pool_pos_[p] = -1;
}

int Pairing::expose_mate(int p, Rng& rng) {
  if (p < 0 || p >= points()) fail("BadParams", "point out of range");
  if (exposed_[p]) fail("AlreadyExposed", "point " + std::to_string(p) + " already exposed");
  int q = partner_[p];
  if (q < 0) {
    take_from_pool(p);
    if (pool_.empty()) fail("NoPointsLeft", "no unexposed point left to pair with");
    q = pool_[rng.index(static_cast<int>(pool_.size()))];
    take_from_pool(q);
    partner_[p] = q;
    partner_[q] = p;
  }
  exposed_[p] = exposed_[q] = 1;
  unexposed_ -= 2;
  log_.emplace_back(p, q);
  return q;
}

void Pairing::expose_all(Rng& rng) {
  for (int p = 0; p < points(); ++p)
    if (!exposed_[p]) expose_mate(p, rng);
}

ColouredGraph Pairing::to_graph() const {
  ColouredGraph g(buckets());
  for (auto [a, b] : log_) g.add_edge(bucket_[a], bucket_[b]);
  return g;
}

Pairing random_pairing(std::span<const int> degrees, Rng& rng) {
  Pairing lazy(degrees);
  // Exposing points in index order with uniform mates yields a uniform matching;
  // the result is then frozen into an eager pairing with nothing exposed.
  std::vector<int> partner(lazy.points(), -1);
  for (int p = 0; p < lazy.points(); ++p)
    if (!lazy.exposed(p)) {
      const int q = lazy.expose_mate(p, rng);
      partner[p] = q;
      partner[q] = p;
    }
  Pairing out(degrees);
  out.partner_ = partner;
  out.pool_.clear();
  std::fill(out.pool_pos_.begin(), out.pool_pos_.end(), -1);
  return out;
}

namespace {

void check_regular_params(int n, int r) {
  if (n < 0 || r < 0) fail("BadParams", "n and r must be nonnegative");
  if ((static_cast<long long>(n) * r) % 2 != 0) fail("OddPointCount", "n*r must be even");
  if (n <= r) fail("BadParams", "need n > r");
}

struct SimpleScratch {
  std::vector<int> pts;
  std::vector<int> nb;   // n*r neighbour slots
  std::vector<int> cnt;
};

// One uniform pairing read off as a multigraph, or nothing if it is not simple.
// Pairs are drawn one at a time so a loop or repeat rejects early.
bool try_simple(int n, int r, Rng& rng, SimpleScratch& s, ColouredGraph& out) {
  const int m = n * r;
  s.pts.resize(m);
  std::iota(s.pts.begin(), s.pts.end(), 0);
  s.nb.resize(m);
  s.cnt.assign(n, 0);
  for (int k = 0; k < m; k += 2) {
    std::swap(s.pts[k], s.pts[k + rng.index(m - k)]);
    std::swap(s.pts[k + 1], s.pts[k + 1 + rng.index(m - k - 1)]);
    const int a = s.pts[k] / r, b = s.pts[k + 1] / r;
    if (a == b) return false;
    for (int i = 0; i < s.cnt[a]; ++i)
      if (s.nb[a * r + i] == b) return false;
    s.nb[a * r + s.cnt[a]++] = b;
    s.nb[b * r + s.cnt[b]++] = a;
  }
  ColouredGraph g(n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < r; ++i)
      if (a < s.nb[a * r + i]) g.add_edge(a, s.nb[a * r + i]);
  out = std::move(g);
  return true;
}

}  // namespace

ColouredGraph sample_simple_regular(int n, int r, Rng& rng, long long max_tries,
                                    SampleReport* report) {
  check_regular_params(n, r);
  SimpleScratch scratch;
  ColouredGraph g;
  SampleReport local;
  for (long long t = 0; t < max_tries; ++t) {
    ++local.tries;
    if (try_simple(n, r, rng, scratch, g)) {
      ++local.accepted;
      if (report) *report = local;
      return g;
    }
  }
  if (report) *report = local;
  fail("TriesExhausted", "no simple graph in " + std::to_string(max_tries) + " tries");
}

ColouredGraph sample_with_min_girth(int n, int r, int g, Rng& rng, long long max_tries,
                                    SampleReport* report) {
  check_regular_params(n, r);
  SampleReport local;
  for (long long t = 0; t < max_tries; ++t) {
    ++local.tries;
    ColouredGraph h = sample_simple_regular(n, r, rng, 1000000);
    if (g <= 3 || !has_cycle_shorter_than(h, g)) {
      ++local.accepted;
      if (report) *report = local;
      return h;
    }
  }
  if (report) *report = local;
  std::ostringstream os;
  os << "no graph of girth >= " << g << " in " << max_tries << " tries (observed acceptance "
     << local.acceptance() << ")";
  fail("TriesExhausted", os.str());
}

}  // namespace localdel
