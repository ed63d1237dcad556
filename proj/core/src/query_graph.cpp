#include "localdel/query_graph.hpp"

#include <algorithm>

#include "localdel/errors.hpp"

namespace localdel {

int Palette::output_index(const std::string& name) const {
  auto it = std::find(output.begin(), output.end(), name);
  if (it == output.end()) fail("UnknownName", "no output colour " + name);
  return static_cast<int>(it - output.begin());
}

int Palette::transient_index(const std::string& name) const {
  auto it = std::find(transient.begin(), transient.end(), name);
  if (it == transient.end()) fail("UnknownName", "no transient colour " + name);
  return static_cast<int>(it - transient.begin());
}

std::string type_name(const Palette& pal, const TypeSpace& ts, int type) {
  return pal.transient[ts.colour(type)] + ":" + std::to_string(ts.degree(type));
}

int QueryGraph::diamonds(int i) const {
  return static_cast<int>(std::count(v[i].slots.begin(), v[i].slots.end(), kDiamond));
}

int QueryGraph::count_slots(int i, int type) const {
  return static_cast<int>(std::count(v[i].slots.begin(), v[i].slots.end(), type));
}

std::vector<int> QueryGraph::children(int i) const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j)
    if (v[j].parent == i) out.push_back(j);
  return out;
}

std::string QueryGraph::key() const {
  std::string k;
  for (const auto& q : v) {
    k += std::to_string(q.type) + "<" + std::to_string(q.parent) + "{";
    auto s = q.slots;
    std::sort(s.begin(), s.end());
    for (int t : s) k += std::to_string(t) + ",";
    k += "}";
  }
  for (auto [a, b] : closures) k += "~" + std::to_string(a) + "-" + std::to_string(b);
  return k;
}

}  // namespace localdel
