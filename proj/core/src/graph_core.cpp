#include "localdel/graph_core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <set>
#include <sstream>

#include "localdel/errors.hpp"

namespace localdel {

ColouredGraph::ColouredGraph(int n) : inc_(n), alive_(n, 1), colour_(n, kNeutral) {
  if (n < 0) fail("BadParams", "negative vertex count");
}

int ColouredGraph::add_edge(int u, int v) {
  const int n = order();
  if (u < 0 || v < 0 || u >= n || v >= n)
    fail("VertexOutOfRange", "edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  const int e = static_cast<int>(edges_.size());
  edges_.push_back({u, v});
  present_.push_back(1);
  inc_[u].push_back(e);
  inc_[v].push_back(e);
  ++present_edges_;
  return e;
}

void ColouredGraph::remove_edge(int e) {
  if (!present_[e]) return;
  present_[e] = 0;
  --present_edges_;
  for (int x : {edges_[e].u, edges_[e].v}) {
    auto& l = inc_[x];
    auto it = std::find(l.begin(), l.end(), e);
    if (it != l.end()) l.erase(it);
  }
}

int ColouredGraph::max_degree() const {
  int m = 0;
  for (const auto& l : inc_) m = std::max(m, static_cast<int>(l.size()));
  return m;
}

void ColouredGraph::kill(int v, int output_colour) {
  while (!inc_[v].empty()) remove_edge(inc_[v].back());
  alive_[v] = 0;
  colour_[v] = output_colour;
}

std::vector<Edge> ColouredGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(present_edges_);
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (present_[e]) out.push_back(edges_[e]);
  return out;
}

bool ColouredGraph::is_simple() const {
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges()) {
    if (e.u == e.v) return false;
    if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) return false;
  }
  return true;
}

bool ColouredGraph::is_regular(int r) const {
  return std::all_of(inc_.begin(), inc_.end(),
                     [r](const auto& l) { return static_cast<int>(l.size()) == r; });
}

std::string ColouredGraph::audit() const {
  int count = 0;
  std::vector<int> deg(order(), 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!present_[e]) continue;
    ++count;
    ++deg[edges_[e].u];
    ++deg[edges_[e].v];
  }
  if (count != present_edges_) return "edge count mismatch";
  for (int v = 0; v < order(); ++v) {
    if (deg[v] != degree(v)) return "incidence mismatch at " + std::to_string(v);
    if (!alive_[v] && deg[v] != 0) return "dead vertex with edges: " + std::to_string(v);
  }
  return {};
}

namespace {

// BFS from root recording, for each reached vertex, which root edge its tree path
// starts with. A non-tree edge joining two different branches closes a cycle through
// the root; an edge inside one branch only proves a cycle somewhere.
struct CycleProbe {
  int through_root = std::numeric_limits<int>::max();
  int anywhere = std::numeric_limits<int>::max();
};

CycleProbe probe(const ColouredGraph& g, int root, int max_len, std::vector<int>& dist,
                 std::vector<int>& branch, std::vector<int>& parent_edge,
                 std::vector<int>& touched) {
  CycleProbe res;
  const int depth_cap = max_len / 2 + 1;
  std::vector<int> queue{root};
  dist[root] = 0;
  branch[root] = -1;
  parent_edge[root] = -1;
  touched.push_back(root);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int a = queue[head];
    if (dist[a] >= depth_cap) continue;
    for (int e : g.incident(a)) {
      if (e == parent_edge[a]) continue;
      const int b = g.other(e, a);
      if (dist[b] < 0) {
        dist[b] = dist[a] + 1;
        branch[b] = (a == root) ? e : branch[a];
        parent_edge[b] = e;
        touched.push_back(b);
        queue.push_back(b);
        continue;
      }
      if (e == parent_edge[b]) continue;
      const int len = dist[a] + dist[b] + 1;
      res.anywhere = std::min(res.anywhere, len);
      if (branch[a] != branch[b] || a == root || b == root)
        res.through_root = std::min(res.through_root, len);
    }
  }
  return res;
}

struct Scratch {
  std::vector<int> dist, branch, parent_edge, touched;
  explicit Scratch(int n) : dist(n, -1), branch(n, -1), parent_edge(n, -1) {}
  void reset() {
    for (int x : touched) dist[x] = -1;
    touched.clear();
  }
};

}  // namespace

int shortest_cycle_through(const ColouredGraph& g, int v, int max_len) {
  Scratch s(g.order());
  const auto p = probe(g, v, max_len, s.dist, s.branch, s.parent_edge, s.touched);
  return p.through_root <= max_len ? p.through_root : kInfiniteGirth;
}

int girth(const ColouredGraph& g) {
  const int n = g.order();
  int best = std::numeric_limits<int>::max();
  Scratch s(n);
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) == 0) continue;
    const int cap = best == std::numeric_limits<int>::max() ? 2 * n + 2 : best;
    best = std::min(best, probe(g, v, cap, s.dist, s.branch, s.parent_edge, s.touched).anywhere);
    s.reset();
    if (best == 1) break;
  }
  return best == std::numeric_limits<int>::max() ? kInfiniteGirth : best;
}

int count_short_cycles(const ColouredGraph& g, int L) {
  if (L < 1) fail("BadParams", "L must be positive");
  Scratch s(g.order());
  int count = 0;
  for (int v = 0; v < g.order(); ++v) {
    if (probe(g, v, L, s.dist, s.branch, s.parent_edge, s.touched).through_root <= L) ++count;
    s.reset();
  }
  return count;
}

bool has_cycle_shorter_than(const ColouredGraph& g, int len) {
  if (len <= 1) return false;
  Scratch s(g.order());
  for (int v = 0; v < g.order(); ++v) {
    const bool hit = probe(g, v, len - 1, s.dist, s.branch, s.parent_edge, s.touched).anywhere < len;
    s.reset();
    if (hit) return true;
  }
  return false;
}

namespace {

struct CageEntry {
  const char* name;
  const char* lcf;  // empty for explicit constructions
  int n;
  int girth;
};

constexpr CageEntry kCages[] = {
    {"petersen", "", 10, 5},
    {"heawood", "[5,-5]^7", 14, 6},
    {"mcgee", "[12,7,-7]^8", 24, 7},
    {"tutte-coxeter", "[-13,-9,7,-7,9,13]^5", 30, 8},
};

ColouredGraph petersen() {
  ColouredGraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

}  // namespace

std::vector<std::string> cage_names() {
  std::vector<std::string> out;
  for (const auto& c : kCages) out.emplace_back(c.name);
  return out;
}

int cage_girth(const std::string& name) {
  for (const auto& c : kCages)
    if (name == c.name) return c.girth;
  fail("UnknownName", "no cage named '" + name + "'");
}

ColouredGraph cage(const std::string& name) {
  for (const auto& c : kCages) {
    if (name != c.name) continue;
    ColouredGraph g = std::string_view(c.lcf).empty() ? petersen() : parse_lcf(c.lcf);
    if (g.order() != c.n || !g.is_simple() || !g.is_regular(3) || girth(g) != c.girth)
      fail("CorruptCatalogue", "catalogue entry '" + name + "' failed verification");
    return g;
  }
  fail("UnknownName", "no cage named '" + name + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_int(std::string_view s, long long& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

ColouredGraph parse_edge_list(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = trim(text.substr(start, end - start));
    if (!line.empty() && line.front() != '#') lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) fail("MalformedHeader", "missing 'n m' header");
  long long n = 0, m = 0;
  {
    auto h = lines[0];
    const auto sp = h.find_first_of(" \t");
    if (sp == std::string_view::npos || !parse_int(h.substr(0, sp), n) ||
        !parse_int(h.substr(sp), m) || n < 0 || m < 0)
      fail("MalformedHeader", "header must be two nonnegative integers 'n m'");
  }
  if (static_cast<long long>(lines.size()) - 1 != m)
    fail("MalformedHeader", "header announces " + std::to_string(m) + " edges, found " +
                                std::to_string(lines.size() - 1));
  ColouredGraph g(static_cast<int>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto l = lines[i];
    const auto sp = l.find_first_of(" \t");
    long long u = 0, v = 0;
    if (sp == std::string_view::npos || !parse_int(l.substr(0, sp), u) ||
        !parse_int(l.substr(sp), v))
      fail("MalformedHeader", "bad edge line " + std::to_string(i));
    if (u < 0 || v < 0 || u >= n || v >= n)
      fail("VertexOutOfRange", "edge line " + std::to_string(i) + " refers to a vertex outside [0," +
                                   std::to_string(n) + ")");
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  return g;
}

}  // namespace

ColouredGraph parse_lcf(std::string_view text) {
  text = trim(text);
  const auto open = text.find('[');
  const auto close = text.find(']');
  if (open != 0 || close == std::string_view::npos)
    fail("MalformedHeader", "LCF must look like [a,b,...]^k");
  std::vector<long long> shifts;
  auto body = text.substr(1, close - 1);
  while (!body.empty()) {
    const auto comma = body.find(',');
    long long s = 0;
    if (!parse_int(body.substr(0, comma), s)) fail("MalformedHeader", "bad LCF shift");
    shifts.push_back(s);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  long long k = 1;
  auto rest = trim(text.substr(close + 1));
  if (!rest.empty()) {
    if (rest.front() != '^' || !parse_int(rest.substr(1), k) || k < 1)
      fail("MalformedHeader", "bad LCF exponent");
  }
  if (shifts.empty()) fail("MalformedHeader", "empty LCF");
  const long long n = static_cast<long long>(shifts.size()) * k;
  if (n % 2 != 0 || n < 4) fail("OddLcfApplication", "LCF needs an even cycle length >= 4");
  auto target = [&](long long i) {
    const long long s = shifts[i % static_cast<long long>(shifts.size())];
    return ((i + s) % n + n) % n;
  };
  for (long long i = 0; i < n; ++i) {
    const long long j = target(i);
    if (j == i || target(j) != i)
      fail("OddLcfApplication", "LCF chords do not pair up at vertex " + std::to_string(i));
  }
  ColouredGraph g(static_cast<int>(n));
  for (long long i = 0; i < n; ++i) g.add_edge(static_cast<int>(i), static_cast<int>((i + 1) % n));
  for (long long i = 0; i < n; ++i)
    if (i < target(i)) g.add_edge(static_cast<int>(i), static_cast<int>(target(i)));
  return g;
}

ColouredGraph parse_graph(std::string_view text, GraphFormat format) {
  return format == GraphFormat::LCF ? parse_lcf(text) : parse_edge_list(text);
}

std::string serialize_graph(const ColouredGraph& g) {
  std::ostringstream os;
  const auto es = g.edges();
  os << g.order() << ' ' << es.size() << '\n';
  for (const Edge& e : es) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

}  // namespace localdel
