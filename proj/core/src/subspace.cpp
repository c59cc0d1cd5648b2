#include "mptk/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mptk/decompositions.hpp"

namespace mptk {

namespace {

void require_orthonormal(const ComplexMatrix& u, const char* what) {
  require_finite(u, what);
  if (u.cols() > u.rows())
    throw Error(ErrorCode::ShapeError, std::string(what) + " has more columns than rows");
  const ComplexMatrix gram = adjoint(u) * u;
  double dev = 0.0;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j)
      dev += std::norm(gram(i, j) - (i == j ? Complex(1.0, 0.0) : Complex(0.0, 0.0)));
  if (std::sqrt(dev) > 1e-10 * static_cast<double>(u.rows()))
    throw Error(ErrorCode::NotOrthonormal, std::string(what) + " columns are not orthonormal");
}

}  // namespace

SinTheta sin_theta(const ComplexMatrix& u1, const ComplexMatrix& u2) {
  if (u1.cols() != u2.cols())
    throw Error(ErrorCode::RankMismatch, "sin_theta: subspace dimensions " +
                                             std::to_string(u1.cols()) + " vs " +
                                             std::to_string(u2.cols()));
  if (u1.rows() != u2.rows())
    throw Error(ErrorCode::ShapeError, "sin_theta: ambient dimensions differ");
  require_orthonormal(u1, "sin_theta first argument");
  require_orthonormal(u2, "sin_theta second argument");

  SinTheta out;
  if (u1.cols() == 0) return out;
  // The singular values of (I - U1 U1^H) U2 are the principal-angle sines
  // directly; unlike sqrt(1 - cos^2) this does not cancel for small angles.
  const ComplexMatrix residual = u2 - u1 * (adjoint(u1) * u2);
  const SingularDecomposition svd = svd_sorted(residual);
  out.sines.resize(svd.singulars.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < svd.singulars.size(); ++i) {
    // svd_sorted returns nonincreasing values; store the sines ascending.
    const double s = std::clamp(svd.singulars[svd.singulars.size() - 1 - i], 0.0, 1.0);
    out.sines[i] = s;
    sum += s * s;
  }
  out.fro = std::sqrt(sum);
  out.spectral = out.sines.back();
  return out;
}

ProcrustesResult align_procrustes(const ComplexMatrix& prev, const ComplexMatrix& next) {
  if (prev.rows() != next.rows() || prev.cols() != next.cols())
    throw Error(ErrorCode::ShapeError, "align_procrustes: shapes differ");
  require_orthonormal(prev, "align_procrustes prev");
  require_orthonormal(next, "align_procrustes next");

  ProcrustesResult out;
  if (prev.cols() == 0) {
    out.aligned = next;
    out.rotation = ComplexMatrix(0, 0);
    return out;
  }

  const ComplexMatrix overlap = adjoint(next) * prev;
  const SingularDecomposition svd = svd_sorted(overlap);
  if (svd.singulars.back() < 1e-8)
    throw Error(ErrorCode::RankCollapse,
                "align_procrustes: subspaces nearly orthogonal (overlap singular value " +
                    std::to_string(svd.singulars.back()) + "); refine the grid");

  out.rotation = svd.left * adjoint(svd.right);
  out.aligned = next * out.rotation;

  // Measure the realized gauge condition on the computed product rather
  // than trusting the construction.
  const ComplexMatrix p = adjoint(prev) * out.aligned;
  double asym = 0.0;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) asym += std::norm(p(i, j) - std::conj(p(j, i)));
  out.hermiticity_residual = std::sqrt(asym);
  const SpectralDecomposition eig = eigh_sorted(hermitian_part(p));
  out.min_eigenvalue = eig.eigenvalues.back();
  return out;
}

}  // namespace mptk
