#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "admmsplit/linalg.hpp"

namespace admmsplit {

/// SplitMix64 (Steele, Lea, Flood 2014). Used to expand a 64-bit seed into
/// generator state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256++ (Blackman & Vigna 2019), seeded via SplitMix64.
///
/// A fixed, documented generator rather than std:: distributions: the exact
/// output stream is part of the reproducibility contract, so golden files can
/// be regenerated by any conforming implementation.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  /// Pair of independent standard normals via Box-Muller.
  std::pair<double, double> next_gauss_pair() {
    const double u1 = 1.0 - next_double();  // (0, 1], keeps the log finite
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * pi() * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

  Complex next_complex_gauss() {
    const auto [re, im] = next_gauss_pair();
    return Complex(re, im);
  }

  /// Unit-modulus value with phase uniform in [0, 2*pi).
  Complex next_unit_phase() {
    const double theta = 2.0 * pi() * next_double();
    return Complex(std::cos(theta), std::sin(theta));
  }

  static constexpr double pi() { return 3.14159265358979323846; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t state_[4];
};

}  // namespace admmsplit
