#include "localdel/rng.hpp"

#include <cmath>
#include <limits>

namespace localdel {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t depth) {
  auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x); };
  auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(depth), hi(depth)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), eng_(make_engine(seed, stream, 0)) {}

Rng Rng::split(std::uint64_t child) const {
  Rng r(*this);
  r.depth_ = depth_ + 1;
  r.stream_ = stream_ * 0x9E3779B97F4A7C15ULL + child + 1;
  r.eng_ = make_engine(seed_, r.stream_, r.depth_);
  return r;
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Lemire's multiply-and-reject method.
  std::uint64_t x = eng_();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t t = (0 - n) % n;
    while (low < t) {
      x = eng_();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t Rng::geometric(double p) {
  if (p >= 1.0) return 0;
  if (p <= 0.0) return std::numeric_limits<std::uint64_t>::max();
  const double u = 1.0 - uniform();  // (0, 1]
  const double g = std::floor(std::log(u) / std::log1p(-p));
  if (g >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(g);
}

}  // namespace localdel
