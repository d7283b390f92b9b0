#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "playpen/geometry.hpp"

namespace playpen {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream. All distributions are generated from raw
/// mt19937_64 output by hand so that sequences are pinned by this code alone,
/// not by the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed), gen_(splitmix64(seed)) {}

  /// Independent child stream; `tag` selects the stream.
  Rng child(std::uint64_t tag) const { return Rng(splitmix64(seed_ ^ splitmix64(tag + 0x51ed2700f7b3a1b5ULL))); }

  std::uint64_t bits() { return gen_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Uniform integer in [0, n), n >= 1.
  std::uint64_t uniform_int(std::uint64_t n) {
    // Rejection sampling over the smallest covering power-of-two mask.
    std::uint64_t mask = ~0ULL >> std::countl_zero(n | 1ULL);
    std::uint64_t v;
    do {
      v = gen_() & mask;
    } while (v >= n);
    return v;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller (one value per call, no cached state).
  double normal() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  std::string serialize() const {
    std::ostringstream os;
    os << seed_ << ' ' << gen_;
    return os.str();
  }

  static Rng deserialize(const std::string& s) {
    std::istringstream is(s);
    Rng r;
    is >> r.seed_ >> r.gen_;
    return r;
  }

  bool operator==(const Rng& o) const { return seed_ == o.seed_ && gen_ == o.gen_; }

 private:
  std::uint64_t seed_ = 0;
  std::mt19937_64 gen_;
};

}  // namespace playpen
