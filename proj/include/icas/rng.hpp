#pragma once

#include <cstdint>
#include <random>

namespace icas {

/// Normal deviates keyed by (seed, shot, stream). Each key gets its own
/// mt19937_64 state seeded through a seed_seq, so streams are independent of
/// the order in which shots run.
class KeyedRng {
 public:
  KeyedRng(std::uint64_t seed, std::uint64_t shot, std::uint64_t stream) : engine_(make_engine(seed, shot, stream)) {}

  double normal() { return normal_(engine_); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

 private:
  static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t shot, std::uint64_t stream) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(shot), hi(shot), lo(stream), hi(stream), 0x1ca5u};
    return std::mt19937_64(seq);
  }

  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace icas
