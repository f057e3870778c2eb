#pragma once

// Seeded sampling with a fully specified generator (splitmix64 seeding of
// xoshiro256**) so that a seed reproduces the same matrices anywhere.

#include <array>
#include <cstddef>
#include <cstdint>

#include "grassphase/grassmann.hpp"
#include "grassphase/mat_core.hpp"

namespace gphase {

/// Reference splitmix64 step.
std::uint64_t splitmix64(std::uint64_t& state);

/// Reference xoshiro256** generator; state filled from splitmix64(seed).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  /// Independent stream for a (seed, salt) pair.
  Rng(std::uint64_t seed, std::uint64_t salt);

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal by Box-Muller (cosine branch only).
  double normal();
  /// Real and imaginary parts i.i.d. N(0, 1/2), so E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Default spectral-norm cap for sampled chart points.
constexpr double kDefaultRadiusCap = 0.8;

/// n x m matrix of i.i.d. complex normals.
ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Gaussian chart matrix rescaled to spectral norm radius_cap * u, u ~ U(0,1].
GrassmannPoint random_point(std::size_t n, std::size_t m, Rng& rng,
                            double radius_cap = kDefaultRadiusCap);

/// (G + G^+)/2 for a Gaussian G.
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);

}  // namespace gphase
