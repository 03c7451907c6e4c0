#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace sdisc {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t stream_id(std::string_view name) {
  // FNV-1a, used only to derive independent substreams per check name
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic random source.  Doubles are produced by explicit bit
// manipulation of the mt19937_64 output so streams are identical across
// platforms and standard-library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(splitmix64(seed)) {}
  Rng(uint64_t seed, uint64_t stream) : eng_(splitmix64(seed ^ splitmix64(stream))) {}

  uint64_t raw() { return eng_(); }

  // uniform in [0, 1)
  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * u01(); }

  // re and im each uniform in [-s, s]
  std::complex<double> box(double s = 1.0) {
    return {uniform(-s, s), uniform(-s, s)};
  }

  int index(int n) { return static_cast<int>(eng_() % static_cast<uint64_t>(n)); }

 private:
  std::mt19937_64 eng_;
};

// Per-trial stream: f(seed, trial, check-name)
inline uint64_t trial_seed(uint64_t seed, uint64_t trial, std::string_view check) {
  return splitmix64(seed ^ splitmix64(trial + 0x51ed2701) ^ stream_id(check));
}

}  // namespace sdisc
