#pragma once

#include <vector>

#include "mptk/complex_matrix.hpp"

namespace mptk {

/// Eigenvalues sorted nonincreasing; basis columns are the matching
/// orthonormal eigenvectors with a deterministic phase (largest-magnitude
/// entry real nonnegative, ties resolved by lowest row index).
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix basis;  // n x n unitary
};

/// Singular values sorted nonincreasing (all >= 0).  left is m x m, right is
/// n x n; requires m >= n (transpose first otherwise).  The phase convention
/// is applied to the right factor; left columns carrying a nonzero singular
/// value inherit their phase from B v_i = sigma_i w_i, and the remaining left
/// columns (nullspace completion) are phase-fixed directly.
struct SingularDecomposition {
  ComplexMatrix left;
  std::vector<double> singulars;
  ComplexMatrix right;
};

/// Cyclic complex Jacobi with unconditional orthogonality quality: sweeps
/// until the off-diagonal Frobenius mass is <= 1e-14 ||A||_F (at most 30
/// sweeps).  Input must be Hermitian within 1e-12 ||A||_F; it is symmetrized
/// before iterating.
SpectralDecomposition eigh_sorted(const ComplexMatrix& a);

/// One-sided Jacobi on columns (Jacobi on B^H B with accumulated rotations),
/// per-pair relative tolerance 1e-14, at most 30 sweeps.  For m > n the left
/// factor is completed to m x m by Gram-Schmidt QR against identity columns.
SingularDecomposition svd_sorted(const ComplexMatrix& b);

enum class NormKind { Frobenius, Spectral };

/// Frobenius or spectral norm; the spectral norm is the largest singular
/// value computed by svd_sorted (deterministic, no iteration-count surprises).
double matrix_norm(const ComplexMatrix& a, NormKind kind);

}  // namespace mptk
