#include "tts/rng.hpp"

#include <cmath>

namespace tts {

std::uint64_t splitmix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = a ^ (counter * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
  std::uint64_t seed = splitmix64(s);
  // mt19937_64 seeded with 0 and 1 share their first outputs rarely enough;
  // still, avoid the all-zero seed.
  return seed ? seed : 0x1ULL;
}

double RngStream::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

} // namespace tts
