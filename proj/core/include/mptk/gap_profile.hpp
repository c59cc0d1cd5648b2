#pragma once

#include <vector>

#include "mptk/path_tracking.hpp"

namespace mptk {

/// One family of per-block gap curves over the tracked grid.  minima are the
/// grid minima, reported as exactly 0 when they fall at or below
/// 1e-12 * ||.||_2 of the tracked matrix (gap-collapse convention); a single
/// block yields +inf rows by the empty-min convention.
struct GapProfile {
  std::vector<double> grid;
  std::vector<std::vector<double>> per_block;  // k rows, one value per grid point
  std::vector<double> minima;                  // per block
};

GapProfile gap_profile_eig(const EigPath& path);

/// Gap families for a tracked singular value decomposition:
///   rho      inter-block singular value gaps,
///   rho_hat  min(rho_j, sigma_j_min), the separation coupled to the block's
///            smallest singular value (square-case bounds substitute rho),
///   sigma    smallest singular value per block,
/// plus the global sigma_min over all blocks and grid points.
struct SvdGapProfile {
  GapProfile rho;
  GapProfile rho_hat;
  GapProfile sigma;
  double sigma_min = 0.0;
};

SvdGapProfile gap_profile_svd(const SvdPath& path);

}  // namespace mptk
