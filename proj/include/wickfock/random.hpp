#ifndef WICKFOCK_RANDOM_HPP
#define WICKFOCK_RANDOM_HPP

#include <cstdint>
#include <random>

#include "wickfock/linalg.hpp"

namespace wickfock {

/// Reproducible stream: std::mt19937_64 (its output sequence is fixed by the
/// standard) mapped to doubles by hand, so results do not depend on the
/// library's distribution implementations.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [-1, 1).
  double uniform() { return 2.0 * static_cast<double>(engine_() >> 11) * 0x1.0p-53 - 1.0; }
  Complex complex() {
    const double re = uniform();
    return {re, uniform()};
  }
  std::uint64_t bits() { return engine_(); }
  /// Uniform in [0, bound), bound > 0.
  std::size_t below(std::size_t bound) { return static_cast<std::size_t>(engine_() % bound); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wickfock

#endif  // WICKFOCK_RANDOM_HPP
