#pragma once

#include <cstdint>
#include <random>

namespace localdel {

// Reproducible random stream. The engine is std::mt19937_64 seeded through
// std::seed_seq from (seed, stream); both are fully specified by the C++
// standard, so a given pair yields the same sequence on every platform. The
// integer and real conversions below are written out for the same reason.
class Rng {
public:
  Rng(std::uint64_t seed = 0, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  // Child stream keyed by (seed, stream, child); independent of the parent's position.
  Rng split(std::uint64_t child) const;

  std::uint64_t next() { return eng_(); }
  // Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  int index(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }
  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform() < p); }
  // Number of failures before the first success of a Bernoulli(p) sequence.
  std::uint64_t geometric(double p);

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t depth_ = 0;
  std::mt19937_64 eng_;
};

}  // namespace localdel
