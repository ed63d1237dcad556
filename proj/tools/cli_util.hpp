#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "localdel/errors.hpp"
#include "localdel/graph_core.hpp"

namespace cli {

using nlohmann::json;

#ifndef LOCALDEL_VERSION
#define LOCALDEL_VERSION "dev"
#endif

inline int exit_code_for(const std::string& kind) {
  if (kind == "ValidationFailed") return 2;
  if (kind == "Io") return 4;
  static const char* domain[] = {"OutsideDomain", "LeftDomain",     "NoEventInRange", "DegenerateMix",
                                 "Stuck",         "TruncationLoss", "TriesExhausted"};
  for (const char* d : domain)
    if (kind == d) return 3;
  return 1;
}

inline json error_json(const std::string& kind, const std::string& msg) {
  return {{"error", {{"kind", kind}, {"message", msg}, {"exit_code", exit_code_for(kind)}}}};
}

// Output directory plus the list of files written into it.
class Out {
public:
  explicit Out(std::string dir) : dir_(std::move(dir)) {}

  std::string path(const std::string& name) const { return (std::filesystem::path(dir_) / name).string(); }

  void write(const std::string& name, const std::string& text) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) localdel::fail("Io", "cannot create " + dir_ + ": " + ec.message());
    const std::string p = path(name);
    std::ofstream f(p, std::ios::binary);
    if (!f) localdel::fail("Io", "cannot open " + p + " for writing");
    f << text;
    f.close();
    if (!f) localdel::fail("Io", "write to " + p + " failed");
    files_.push_back(p);
  }
  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  const std::vector<std::string>& files() const { return files_; }

private:
  std::string dir_;
  std::vector<std::string> files_;
};

struct Manifest {
  std::string command;
  std::string algorithm;
  json params = json::object();
  long long n = 0;
  int r = 0;
  unsigned long long seed = 0;
  unsigned long long stream = 0;
  long long trials = 0;
  json extra = json::object();

  // Written last so the output list is complete.
  void write(Out& out) const {
    json j = {{"command", command},   {"algorithm", algorithm}, {"params", params},
              {"n", n},               {"r", r},                 {"seed", seed},
              {"stream_id", stream},  {"trials", trials},       {"tool_version", LOCALDEL_VERSION}};
    j["stream_rule"] = "trial k uses stream stream_id + k";
    std::vector<std::string> files = out.files();
    files.push_back(out.path("manifest.json"));
    j["outputs"] = files;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = *it;
    out.write_json("manifest.json", j);
  }
};

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) localdel::fail("Io", "cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

// "cage:NAME" picks from the catalogue; otherwise a file, LCF if it ends in .lcf.
inline localdel::ColouredGraph load_graph(const std::string& spec, const std::string& format = "") {
  if (spec.rfind("cage:", 0) == 0) return localdel::cage(spec.substr(5));
  const std::string text = read_file(spec);
  bool lcf = format == "lcf";
  if (format.empty()) lcf = std::filesystem::path(spec).extension() == ".lcf";
  else if (format != "lcf" && format != "edgelist") localdel::fail("BadParams", "unknown graph format " + format);
  return localdel::parse_graph(text, lcf ? localdel::GraphFormat::LCF : localdel::GraphFormat::EdgeList);
}

// Runs f(k) for k in [0, count) on up to `jobs` threads. Results go to
// index k, so merging does not depend on scheduling. The lowest-index
// exception is rethrown.
template <class F>
void parallel_for(long long count, int jobs, F&& f) {
  jobs = std::max(1, static_cast<int>(std::min<long long>(jobs, count)));
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(count));
  std::atomic<long long> next{0};
  auto worker = [&] {
    for (long long k; (k = next++) < count;) {
      try {
        f(k);
      } catch (...) {
        errs[k] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

struct Moments {
  double sum = 0, sq = 0;
  long long k = 0;
  void add(double x) {
    sum += x;
    sq += x * x;
    ++k;
  }
  double mean() const { return k ? sum / k : 0; }
  double var() const { return k > 1 ? std::max(0.0, (sq - k * mean() * mean()) / (k - 1)) : 0; }
};

}  // namespace cli
