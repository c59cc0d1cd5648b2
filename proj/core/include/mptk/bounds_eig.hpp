#pragma once

#include <cstddef>
#include <vector>

#include "mptk/bound_report.hpp"
#include "mptk/complex_matrix.hpp"
#include "mptk/gap_profile.hpp"
#include "mptk/path_tracking.hpp"

namespace mptk {

/// ||Eig(At) - Eig(A)||_F <= ||At - A||_F (eigenvalues sorted).
BoundReport hoffman_wielandt(const ComplexMatrix& a, const ComplexMatrix& at);

/// Classical sin-theta bound delta12 ||sin Theta(U1, U1t)||_F <= ||(At-A) U1||_F.
/// U1 / U1t must span invariant subspaces of A / At (residual <= 1e-8 ||.||_F);
/// delta12 separates the unperturbed block spectrum from the complementary
/// perturbed spectrum (multiset difference, pairing tolerance 1e-9 ||At||_2).
BoundReport davis_kahan(const ComplexMatrix& a, const ComplexMatrix& at,
                        const ComplexMatrix& u1, const ComplexMatrix& u1t);

/// Classical combined bound:
///   (1 - ||sin||_2^2) ||Eig(L1t) - Eig(L1)||_F^2 + delta12^2 ||sin||_F^2
///     <= ||(At - A) U1||_F^2.
BoundReport li_sun_combined(const ComplexMatrix& a, const ComplexMatrix& at,
                            const ComplexMatrix& u1, const ComplexMatrix& u1t);

/// All-blocks combined bound over the tracked homotopy:
///   ||Eig(A(1)) - Eig(A(0))||_F^2 + sum_j delta_{j,min}^2 ||U_j(1) - U_j(0)||_F^2
///     <= ||delta||_F^2.
/// Blocks with an infinite gap minimum (single block) contribute nothing;
/// a zero gap minimum zeroes its term.
BoundReport combined_all_blocks(const EigPath& path, const GapProfile& gaps);

struct CombinedSingleReports {
  BoundReport main;      // basis-distance form
  BoundReport sin_f;     // sin-theta Frobenius in place of the basis distance
  BoundReport sin_only;  // ||sin||_F <= ||delta U_1||_F / (gap - ||delta||_2)
};

/// Single-block combined bound with block-local right-hand side; requires
/// ||delta||_2 < delta_{target,min} (reported as inapplicable otherwise):
///   (1 - x/d)^2 ||Eig(L(1)) - Eig(L(0))||_F^2 + (d - x)^2 ||U(1) - U(0)||_F^2
///     <= ||delta U(0)||_F^2,   x = ||delta||_2, d = delta_{target,min}.
CombinedSingleReports combined_single_block(const EigPath& path, const GapProfile& gaps,
                                            std::size_t target_block = 0);

/// Corrected gap weights for the spectral-norm variant: per block,
/// tilde_delta_j^2 = delta_j^2 - ||Eig(L_j(1)) - Eig(L_j(0))||_F^2 where
/// delta_j separates the unperturbed block-j values from all other blocks'
/// perturbed values.  Negative corrections clamp to zero.
struct DeltaTilde {
  std::vector<double> per_block;  // tilde_delta_j (0 when clamped, +inf single block)
  std::vector<double> mixed_gap;  // delta_j
  std::vector<double> eig_shift;  // ||Eig(L_j(1)) - Eig(L_j(0))||_F
};

DeltaTilde compute_delta_tilde(const EigPath& path);

/// ||Eig(A(1)) - Eig(A(0))||_F^2 + sum_j tilde_delta_j^2 ||sin Theta_j||_2^2
///   <= ||delta||_F^2   (spectral sin-theta weight).
BoundReport total_bound(const EigPath& path);

/// Per-block prediction delta_{j,min} >= delta_j(0) - 2 ||delta||_2, valid
/// whenever 2 ||delta||_2 < delta_j(0); lhs is the prediction, rhs the
/// tracked minimum.
std::vector<BoundReport> gap_lower_bound(const GapProfile& gaps, const ComplexMatrix& da);

/// Mean-value form for the target block: the combined lhs without hypothesis
/// prefactors against max_t ||delta U(t)||_F^2 over the grid.
BoundReport mvt_check(const EigPath& path, const GapProfile& gaps,
                      std::size_t target_block = 0);

}  // namespace mptk
