#pragma once

#include <array>
#include <cstdint>

#include "cbs/linalg.hpp"

namespace cbs {

/// xoshiro256** seeded through splitmix64. Portable and bit-reproducible;
/// every generated instance in the library is a pure function of this stream.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;

  /// Uniform in (0, 1], 53 bits.
  double uniform() noexcept;
  /// Standard normal via Box-Muller; consumes two uniforms per call.
  double normal() noexcept;
  /// Real and imaginary parts independent standard normals.
  Complex complex_normal() noexcept;
  /// Uniform integer in [lo, hi].
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
};

CVector random_vector(Xoshiro256& rng, std::size_t dim);
ComplexMatrix random_matrix(Xoshiro256& rng, std::size_t dim);

}  // namespace cbs
