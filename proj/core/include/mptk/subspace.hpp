#pragma once

#include <vector>

#include "mptk/complex_matrix.hpp"

namespace mptk {

/// Principal-angle sines between two column spans of equal dimension,
/// ascending, with the Frobenius and spectral aggregates.
struct SinTheta {
  std::vector<double> sines;
  double fro = 0.0;
  double spectral = 0.0;
};

/// Both inputs must be n x r with orthonormal columns (within 1e-10 * n in
/// ||U^H U - I||_F); throws RankMismatch when widths differ.  Computed from
/// the singular values of (I - U1 U1^H) U2, clamped into [0, 1]; this stays
/// accurate down to sines of roundoff size.
SinTheta sin_theta(const ComplexMatrix& u1, const ComplexMatrix& u2);

struct ProcrustesResult {
  ComplexMatrix aligned;   // next * rotation
  ComplexMatrix rotation;  // r x r unitary, polar factor of next^H prev
  /// Diagnostics of the gauge condition: prev^H aligned should be Hermitian
  /// positive semidefinite.  hermiticity_residual = ||P - P^H||_F and
  /// min_eigenvalue is the smallest eigenvalue of (P + P^H)/2.
  double hermiticity_residual = 0.0;
  double min_eigenvalue = 0.0;
};

/// Unitary Procrustes alignment of `next` onto `prev`: the returned rotation
/// minimizes ||next R - prev||_F over unitary R.  Throws RankCollapse when
/// next^H prev is numerically singular (subspaces nearly orthogonal, i.e. a
/// too-coarse homotopy grid).
ProcrustesResult align_procrustes(const ComplexMatrix& prev, const ComplexMatrix& next);

}  // namespace mptk
