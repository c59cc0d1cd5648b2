#pragma once

#include <cstddef>
#include <vector>

#include "mptk/block_partition.hpp"
#include "mptk/complex_matrix.hpp"

namespace mptk {

/// One recorded event along a path (ambiguity or continuity diagnostic).
struct PathFlag {
  std::size_t sample = 0;
  std::size_t block = 0;
  double value = 0.0;
};

struct PathMetadata {
  std::size_t requested_points = 0;
  std::size_t adaptive_insertions = 0;
  double max_spacing = 0.0;
  /// Samples where an inter-block gap fell below 1e-12 * ||.||_2: block
  /// identity past such a point is a convention, not analytic continuation.
  std::vector<PathFlag> block_ambiguity;
  /// Steps whose basis movement exceeded the first-order budget
  /// 10 * dt * ||delta||_F / gap (diagnostic only, never fatal).
  std::vector<PathFlag> continuity_flags;
  /// Worst observed gauge diagnostics over all alignment steps: the step
  /// products U_j(t_i)^H U_j(t_{i+1}) must stay Hermitian positive
  /// semidefinite (within 1e-8).
  double max_gauge_hermiticity = 0.0;
  double min_gauge_eigenvalue = 1.0;
};

struct EigPathSample {
  double t = 0.0;
  std::vector<ComplexMatrix> basis_blocks;            // n x r_j, gauge-aligned
  std::vector<ComplexMatrix> lambda_blocks;           // r_j x r_j Hermitian
  std::vector<std::vector<double>> block_eigs;        // nonincreasing per block
};

struct EigPath {
  ComplexMatrix base;   // A
  ComplexMatrix delta;  // A(1) - A(0)
  BlockPartition partition;
  std::vector<EigPathSample> samples;
  PathMetadata metadata;
};

struct SvdPathSample {
  double t = 0.0;
  std::vector<ComplexMatrix> left_blocks;             // m x r_j
  ComplexMatrix null_block;                           // m x (m - n), empty when square
  std::vector<ComplexMatrix> right_blocks;            // n x r_j
  std::vector<ComplexMatrix> sigma_blocks;            // r_j x r_j, W_j^H B V_j
  std::vector<std::vector<double>> block_sings;       // nonincreasing, >= 0
};

struct SvdPath {
  ComplexMatrix base;
  ComplexMatrix delta;
  BlockPartition partition;
  std::vector<SvdPathSample> samples;
  PathMetadata metadata;
};

/// Tracks the spectral decomposition of A + t dA over [0, 1].  Blocks are
/// consecutive runs of the sorted eigenvalues at t = 0; at later samples,
/// eigenvalues are matched to blocks by min-cost assignment and each block
/// basis is Procrustes-aligned to its predecessor, which realizes the
/// zero-drift gauge U_j^H dU_j/dt = 0 discretely.  The grid is uniform with
/// one round of adaptive bisection wherever a block gap drops below 25% of
/// its neighbors' values.
EigPath track_eig_path(const ComplexMatrix& a, const ComplexMatrix& da,
                       const BlockPartition& partition, std::size_t grid_points = 1025);

/// Same homotopy for B + t dB (rows >= cols).  Left, right, and (for strictly
/// tall inputs) nullspace bases are aligned independently; the tracked
/// Sigma_j(t) = W_j^H B(t) V_j is square but not necessarily diagonal.
SvdPath track_svd_path(const ComplexMatrix& b, const ComplexMatrix& db,
                       const BlockPartition& partition, std::size_t grid_points = 1025);

/// min_{i != j} min |value of block j - value of block i| per block; +inf
/// for a single block (empty min convention).
std::vector<double> pairwise_block_gaps(const std::vector<std::vector<double>>& block_values);

}  // namespace mptk
