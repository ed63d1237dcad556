#include <json.hpp>

#include "localdel/algorithms.hpp"
#include "localdel/errors.hpp"

namespace localdel {

namespace {

using nlohmann::json;

json describe(const std::string& name) {
  json a;
  a["name"] = name;
  const AlgorithmSpec s = make_algorithm(name, AlgorithmParams{name == "bisection" ? 4 : 3});
  a["palette"] = {{"transient", s.palette.transient}, {"output", s.palette.output}};
  a["depth"] = s.depth;
  a["outputs"] = s.output_names();
  json params = json::array();
  params.push_back({{"name", "r"}, {"type", "integer"}, {"default", 3}});
  if (name == "cubic_is_path" || name == "cubic_is_path_improved")
    params.push_back({{"name", "d"}, {"type", "integer"}, {"default", 50}});
  params.push_back({{"name", "mode"},
                    {"type", "string"},
                    {"enum", {"prioritised", "chunky", "deprioritised"}},
                    {"default", "prioritised"}});
  params.push_back({{"name", "epsilon"}, {"type", "number"}, {"default", 0.01}});
  if (name == "dz_is")
    params.push_back({{"name", "dz_rule2a"}, {"type", "string"}, {"enum", {"larger", "smaller"}}, {"default", "larger"}});
  if (name == "bisection") params.push_back({{"name", "max_bisection"}, {"type", "boolean"}, {"default", false}});
  a["params"] = params;
  if (name == "cubic_is_path" || name == "cubic_is_path_improved") a["r_range"] = {3, 3};
  else if (name == "cubic_maxcut") a["r_range"] = {3, 3};
  else if (name == "dz_is") a["r_range"] = {3, 1000};
  else if (name == "bisection") a["r_range"] = {1, 40};
  else a["r_range"] = {1, 1000};
  a["deprioritised_supported"] = name == "cubic_maxcut" || name == "min_degree_is";
  return a;
}

}  // namespace

std::string algorithm_registry_json() {
  json reg = json::array();
  for (const auto& n : algorithm_names()) reg.push_back(describe(n));
  return reg.dump(2);
}

AlgorithmParams params_from_json(const std::string& text) {
  AlgorithmParams p;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail("BadParams", std::string("parameter object is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("BadParams", "parameters must be a JSON object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      if (k == "r") p.r = it->get<int>();
      else if (k == "d") p.d = it->get<int>();
      else if (k == "mode") p.mode = it->get<std::string>();
      else if (k == "epsilon") p.epsilon = it->get<double>();
      else if (k == "max_bisection") p.max_bisection = it->get<bool>();
      else if (k == "dz_rule2a") p.dz_rule2a = it->get<std::string>();
      else fail("BadParams", "unknown parameter " + k);
    }
  } catch (const json::exception& e) {
    fail("BadParams", std::string("bad parameter value: ") + e.what());
  }
  return p;
}

std::string params_to_json(const AlgorithmParams& p) {
  json j = {{"r", p.r}, {"d", p.d}, {"mode", p.mode}, {"epsilon", p.epsilon}, {"max_bisection", p.max_bisection},
           {"dz_rule2a", p.dz_rule2a}};
  return j.dump();
}

}  // namespace localdel
