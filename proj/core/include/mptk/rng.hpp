#pragma once

#include <cstdint>
#include <random>

#include "mptk/complex_matrix.hpp"

namespace mptk {

/// Deterministic random source.  The engine is the exactly-specified
/// mt19937_64, uniforms take the top 53 bits, and normals use an explicit
/// Box-Muller transform (std::normal_distribution is implementation-defined
/// and would break the same-seed-same-output contract across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  /// Independent sub-stream: fixed SplitMix64-style derivation of (seed,
  /// stream), so per-trial generators are reproducible and order-free.
  Rng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform in {0, ..., count - 1}; count must be positive.
  std::size_t uniform_index(std::size_t count);

  /// Standard normal (Box-Muller, one spare cached).
  double normal();
  /// Complex normal with E|z|^2 = 1.
  Complex complex_normal();

  /// rows x cols matrix of independent complex normals.
  ComplexMatrix gaussian(std::size_t rows, std::size_t cols);
  /// Hermitian matrix (G + G^H) / 2 from a complex normal G.
  ComplexMatrix hermitian_gaussian(std::size_t n);
  /// Haar-distributed unitary: Gram-Schmidt of a complex normal matrix (the
  /// positive-diagonal R makes the Q factor exactly Haar).
  ComplexMatrix haar_unitary(std::size_t n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mptk
