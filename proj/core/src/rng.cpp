#include "mptk/rng.hpp"

#include <cmath>
#include <numbers>

#include "mptk/errors.hpp"

namespace mptk {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += kGolden;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state ^= (stream + 1) * kGolden;
  const std::uint64_t b = splitmix64(state);
  return a ^ (b + kGolden);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(derive(seed, 0)) {}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive(seed, stream)) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::uniform_index(std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "uniform_index: empty range");
  const auto index = static_cast<std::size_t>(uniform() * static_cast<double>(count));
  return index < count ? index : count - 1;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]: keeps the log finite
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double scale = std::numbers::sqrt2 / 2.0;
  const double re = normal();
  const double im = normal();
  return {scale * re, scale * im};
}

ComplexMatrix Rng::gaussian(std::size_t rows, std::size_t cols) {
  ComplexMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = complex_normal();
  return out;
}

ComplexMatrix Rng::hermitian_gaussian(std::size_t n) {
  return hermitian_part(gaussian(n, n));
}

ComplexMatrix Rng::haar_unitary(std::size_t n) {
  ComplexMatrix q = gaussian(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    // Two orthogonalization passes keep Q^H Q - I near machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        Complex overlap{0.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) overlap += std::conj(q(r, i)) * q(r, j);
        for (std::size_t r = 0; r < n; ++r) q(r, j) -= overlap * q(r, i);
      }
    }
    double norm_sq = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm_sq += std::norm(q(r, j));
    const double norm = std::sqrt(norm_sq);
    if (!(norm > 1e-12))
      throw Error(ErrorCode::RankCollapse, "haar_unitary: degenerate Gaussian column");
    for (std::size_t r = 0; r < n; ++r) q(r, j) /= norm;
  }
  return q;
}

}  // namespace mptk
