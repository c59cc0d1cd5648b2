#pragma once

#include <cstddef>
#include <vector>

#include "mptk/bound_report.hpp"
#include "mptk/complex_matrix.hpp"
#include "mptk/gap_profile.hpp"
#include "mptk/path_tracking.hpp"

namespace mptk {

/// ||Sing(Bt) - Sing(B)||_F <= ||Bt - B||_F (singular values sorted).
BoundReport mirsky(const ComplexMatrix& b, const ComplexMatrix& bt);

/// All-blocks combined singular value/subspace bound over the tracked
/// homotopy.  Tall inputs (m > n) carry the extra nullspace-block term
/// (sigma_min^2 / 2) ||W_{k+1}(1) - W_{k+1}(0)||_F^2 and use
/// rho_hat = min(rho, sigma_block) weights on the left factor; square inputs
/// use rho weights on both factors.  rhs = ||delta||_F^2.
BoundReport combined_all_svd(const SvdPath& path, const SvdGapProfile& gaps);

struct SvdCombinedReports {
  BoundReport main;         // basis-distance form
  BoundReport sin_variant;  // sin-theta distances in place of basis distances
};

/// Single-block combined bound with block-local right-hand side
/// ||delta V_1(0)||_F^2 + ||W_1(0)^H delta||_F^2.  Tall inputs require
/// ||delta||_2 < rho_hat_{1,min} and carry the amplification factor
/// (rho_hat / (rho_hat - ||delta||_2))^2 on the rhs; square inputs require
/// ||delta||_2 < rho_{1,min} with the prefactors on the lhs instead.
SvdCombinedReports combined_single_svd(const SvdPath& path, const SvdGapProfile& gaps,
                                       std::size_t target_block = 0);

/// Per-block predictions rho_{j,min} >= rho_j(0) - 2 ||delta||_2 and
/// sigma_{j,min} path >= sigma_j(0) - ||delta||_2, combined into a predicted
/// lower bound on the tracked rho_hat minimum; applicable whenever
/// ||delta||_2 <= min(rho_j(0)/2, sigma_j(0)).
std::vector<BoundReport> svd_gap_lower_bound(const SvdGapProfile& gaps,
                                             const ComplexMatrix& db);

/// Mean-value form: combined lhs without hypothesis prefactors against
/// max_t (||delta V_1(t)||_F^2 + ||W_1(t)^H delta||_F^2) over the grid.
BoundReport svd_mvt_check(const SvdPath& path, const SvdGapProfile& gaps,
                          std::size_t target_block = 0);

}  // namespace mptk
