#ifndef TTS_RNG_HPP
#define TTS_RNG_HPP

#include <cstdint>
#include <random>

namespace tts {

// SplitMix64 step; used to derive independent per-trajectory seeds from a
// master seed and a counter, so results do not depend on scheduling order.
std::uint64_t splitmix64(std::uint64_t &state);

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t counter);

// Deterministic random stream. mt19937_64 output is standardized; we avoid
// std::*_distribution (implementation-defined) by deriving doubles directly.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  static RngStream for_trajectory(std::uint64_t master, std::uint64_t index) {
    return RngStream(derive_stream_seed(master, index));
  }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform();

  // Standard normal via Box-Muller (deterministic across platforms).
  double normal();

private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace tts

#endif
