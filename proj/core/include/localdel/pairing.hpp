#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "localdel/graph_core.hpp"
#include "localdel/rng.hpp"

namespace localdel {

// Configuration model: points grouped into buckets. Pairs are fixed either
// eagerly (the whole matching up front) or lazily, one exposure at a time,
// with the mate drawn uniformly from the points not yet paired.
class Pairing {
public:
  Pairing() = default;
  // Lazy pairing over the given bucket sizes; throws OddPointCount.
  explicit Pairing(std::span<const int> degrees);
  // Eager pairing whose pairs are the edges of g (vertex = bucket).
  static Pairing from_graph(const ColouredGraph& g);

  int points() const { return static_cast<int>(bucket_.size()); }
  int buckets() const { return static_cast<int>(start_.size()) - 1; }
  int bucket_of(int p) const { return bucket_[p]; }
  int first_point(int b) const { return start_[b]; }
  int bucket_size(int b) const { return start_[b + 1] - start_[b]; }

  // Partner of p if the pair has been fixed (always, in eager mode), else -1.
  int partner(int p) const { return partner_[p]; }
  bool exposed(int p) const { return exposed_[p] != 0; }
  int unexposed_count() const { return unexposed_; }

  // Reveals the mate of an unexposed point and marks the pair exposed.
  // Throws AlreadyExposed, NoPointsLeft.
  int expose_mate(int p, Rng& rng);
  // Exposes every remaining pair.
  void expose_all(Rng& rng);
  // Pairs exposed so far, in exposure order.
  const std::vector<std::pair<int, int>>& exposure_log() const { return log_; }

  // Multigraph on the buckets made of all exposed pairs.
  ColouredGraph to_graph() const;

private:
  std::vector<int> start_{0};
  std::vector<int> bucket_;
  std::vector<int> partner_;
  std::vector<std::uint8_t> exposed_;
  std::vector<int> pool_;      // lazy mode: unpaired points
  std::vector<int> pool_pos_;  // position in pool_ or -1
  std::vector<std::pair<int, int>> log_;
  int unexposed_ = 0;

  void take_from_pool(int p);
  friend Pairing random_pairing(std::span<const int> degrees, Rng& rng);
};

// Uniform perfect matching on sum(degrees) points, fixed eagerly.
Pairing random_pairing(std::span<const int> degrees, Rng& rng);

struct SampleReport {
  long long tries = 0;
  long long accepted = 0;
  double acceptance() const { return tries ? static_cast<double>(accepted) / tries : 0.0; }
};

// Uniform simple r-regular graph by rejection of pairings. Throws TriesExhausted.
ColouredGraph sample_simple_regular(int n, int r, Rng& rng, long long max_tries = 1000,
                                    SampleReport* report = nullptr);
// Uniform simple r-regular graph of girth >= g by rejection of simple samples;
// each simple sample counts as one try. Throws TriesExhausted.
ColouredGraph sample_with_min_girth(int n, int r, int g, Rng& rng, long long max_tries = 1000000,
                                    SampleReport* report = nullptr);

}  // namespace localdel
