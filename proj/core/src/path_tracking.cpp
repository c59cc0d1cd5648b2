#include "mptk/path_tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "mptk/assignment.hpp"
#include "mptk/decompositions.hpp"
#include "mptk/subspace.hpp"

namespace mptk {

namespace {

constexpr double kAmbiguityRel = 1e-12;
constexpr double kContinuityConst = 10.0;

std::vector<double> uniform_grid(std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  grid.front() = 0.0;
  grid.back() = 1.0;
  return grid;
}

double max_spacing(const std::vector<double>& grid) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) worst = std::max(worst, grid[i + 1] - grid[i]);
  return worst;
}

/// One round of bisection: wherever a finite block gap at an interior sample
/// drops below 25% of both neighbors, split the two surrounding intervals.
std::vector<double> refinement_midpoints(const std::vector<double>& grid,
                                         const std::vector<std::vector<double>>& gaps) {
  std::set<double> inserted;
  for (const std::vector<double>& row : gaps) {
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      if (!std::isfinite(row[i])) continue;
      const double neighbors = std::min(row[i - 1], row[i + 1]);
      if (!std::isfinite(neighbors)) continue;
      if (row[i] < 0.25 * neighbors) {
        inserted.insert(0.5 * (grid[i - 1] + grid[i]));
        inserted.insert(0.5 * (grid[i] + grid[i + 1]));
      }
    }
  }
  std::vector<double> out(inserted.begin(), inserted.end());
  return out;
}

std::vector<double> merge_grid(const std::vector<double>& grid, const std::vector<double>& extra) {
  std::set<double> merged(grid.begin(), grid.end());
  merged.insert(extra.begin(), extra.end());
  return {merged.begin(), merged.end()};
}

ComplexMatrix gather_columns(const ComplexMatrix& m, const std::vector<std::size_t>& idx) {
  ComplexMatrix out(m.rows(), idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, idx[j]);
  return out;
}

void update_gauge_stats(PathMetadata& meta, const ProcrustesResult& align) {
  meta.max_gauge_hermiticity = std::max(meta.max_gauge_hermiticity, align.hermiticity_residual);
  meta.min_gauge_eigenvalue = std::min(meta.min_gauge_eigenvalue, align.min_eigenvalue);
}

/// affinity[b][c] = ||U_b^H q_c||^2, the squared overlap of candidate column
/// c with block b's previous basis; assign_to_blocks uses it to keep block
/// identity vector-continuous through value ties at crossings.
std::vector<std::vector<double>> block_affinity(const std::vector<ComplexMatrix>& prev_blocks,
                                                const ComplexMatrix& basis) {
  std::vector<std::vector<double>> out(prev_blocks.size(),
                                       std::vector<double>(basis.cols(), 0.0));
  for (std::size_t b = 0; b < prev_blocks.size(); ++b) {
    const ComplexMatrix& u = prev_blocks[b];
    for (std::size_t c = 0; c < basis.cols(); ++c) {
      double sum = 0.0;
      for (std::size_t r = 0; r < u.cols(); ++r) {
        Complex inner(0.0, 0.0);
        for (std::size_t i = 0; i < u.rows(); ++i) inner += std::conj(u(i, r)) * basis(i, c);
        sum += std::norm(inner);
      }
      out[b][c] = sum;
    }
  }
  return out;
}

}  // namespace

std::vector<double> pairwise_block_gaps(const std::vector<std::vector<double>>& block_values) {
  const std::size_t k = block_values.size();
  std::vector<double> gaps(k, std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      if (i == j) continue;
      for (double a : block_values[j])
        for (double b : block_values[i]) gaps[j] = std::min(gaps[j], std::abs(a - b));
    }
  }
  return gaps;
}

namespace {

EigPath track_eig_on_grid(const ComplexMatrix& a, const ComplexMatrix& da,
                          const BlockPartition& partition, const std::vector<double>& grid,
                          std::vector<std::vector<double>>& gap_rows) {
  const std::size_t k = partition.count();
  const double delta_fro = frobenius_norm(da);

  EigPath path;
  path.base = a;
  path.delta = da;
  path.partition = partition;
  path.samples.reserve(grid.size());
  gap_rows.assign(k, std::vector<double>(grid.size(), 0.0));

  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const double t = grid[idx];
    const ComplexMatrix m = a + t * da;
    const SpectralDecomposition eig = eigh_sorted(m);

    EigPathSample sample;
    sample.t = t;
    sample.basis_blocks.resize(k);
    sample.lambda_blocks.resize(k);
    sample.block_eigs.resize(k);

    if (idx == 0) {
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t lo = partition.offset(j);
        const std::size_t hi = lo + partition.sizes[j];
        sample.basis_blocks[j] = eig.basis.columns(lo, hi);
        sample.block_eigs[j].assign(eig.eigenvalues.begin() + lo, eig.eigenvalues.begin() + hi);
      }
    } else {
      const EigPathSample& prev = path.samples.back();
      const auto assignment = assign_to_blocks(prev.block_eigs, eig.eigenvalues,
                                               block_affinity(prev.basis_blocks, eig.basis));
      for (std::size_t j = 0; j < k; ++j) {
        const ComplexMatrix candidate = gather_columns(eig.basis, assignment[j]);
        const ProcrustesResult align = align_procrustes(prev.basis_blocks[j], candidate);
        update_gauge_stats(path.metadata, align);
        sample.basis_blocks[j] = align.aligned;
        sample.block_eigs[j].reserve(assignment[j].size());
        for (std::size_t c : assignment[j]) sample.block_eigs[j].push_back(eig.eigenvalues[c]);
      }
    }

    for (std::size_t j = 0; j < k; ++j)
      sample.lambda_blocks[j] = hermitian_part(adjoint(sample.basis_blocks[j]) * m *
                                               sample.basis_blocks[j]);

    const std::vector<double> gaps = pairwise_block_gaps(sample.block_eigs);
    const double scale =
        std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
    for (std::size_t j = 0; j < k; ++j) {
      gap_rows[j][idx] = gaps[j];
      if (gaps[j] < kAmbiguityRel * scale)
        path.metadata.block_ambiguity.push_back({idx, j, gaps[j]});
    }

    if (idx > 0) {
      const EigPathSample& prev = path.samples.back();
      const double dt = t - prev.t;
      for (std::size_t j = 0; j < k; ++j) {
        const double prev_gap = gap_rows[j][idx - 1];
        if (!(prev_gap > 0.0) || !std::isfinite(prev_gap)) continue;
        const double moved = frobenius_norm(sample.basis_blocks[j] - prev.basis_blocks[j]);
        // The 1e-12 floor keeps pure roundoff motion (e.g. a zero delta)
        // from flagging.
        if (moved > kContinuityConst * dt * delta_fro / prev_gap + 1e-12)
          path.metadata.continuity_flags.push_back({idx, j, moved});
      }
    }

    path.samples.push_back(std::move(sample));
  }

  path.metadata.max_spacing = max_spacing(grid);
  return path;
}

}  // namespace

EigPath track_eig_path(const ComplexMatrix& a, const ComplexMatrix& da,
                       const BlockPartition& partition, std::size_t grid_points) {
  require_hermitian(a, "track_eig_path base");
  require_hermitian(da, "track_eig_path delta");
  if (a.rows() != da.rows())
    throw Error(ErrorCode::ShapeError, "track_eig_path: base and delta sizes differ");
  partition.validate(a.rows());
  if (grid_points < 2)
    throw Error(ErrorCode::InvalidArgument, "track_eig_path: need at least 2 grid points");

  std::vector<double> grid = uniform_grid(grid_points);
  std::vector<std::vector<double>> gap_rows;
  EigPath path = track_eig_on_grid(a, da, partition, grid, gap_rows);

  const std::vector<double> midpoints = refinement_midpoints(grid, gap_rows);
  if (!midpoints.empty()) {
    grid = merge_grid(grid, midpoints);
    path = track_eig_on_grid(a, da, partition, grid, gap_rows);
    path.metadata.adaptive_insertions = midpoints.size();
  }
  path.metadata.requested_points = grid_points;
  return path;
}

namespace {

SvdPath track_svd_on_grid(const ComplexMatrix& b, const ComplexMatrix& db,
                          const BlockPartition& partition, const std::vector<double>& grid,
                          std::vector<std::vector<double>>& gap_rows) {
  const std::size_t mrows = b.rows();
  const std::size_t n = b.cols();
  const std::size_t k = partition.count();
  const double delta_fro = frobenius_norm(db);

  SvdPath path;
  path.base = b;
  path.delta = db;
  path.partition = partition;
  path.samples.reserve(grid.size());
  gap_rows.assign(k, std::vector<double>(grid.size(), 0.0));

  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const double t = grid[idx];
    const ComplexMatrix m = b + t * db;
    const SingularDecomposition svd = svd_sorted(m);

    SvdPathSample sample;
    sample.t = t;
    sample.left_blocks.resize(k);
    sample.right_blocks.resize(k);
    sample.sigma_blocks.resize(k);
    sample.block_sings.resize(k);

    if (idx == 0) {
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t lo = partition.offset(j);
        const std::size_t hi = lo + partition.sizes[j];
        sample.left_blocks[j] = svd.left.columns(lo, hi);
        sample.right_blocks[j] = svd.right.columns(lo, hi);
        sample.block_sings[j].assign(svd.singulars.begin() + lo, svd.singulars.begin() + hi);
      }
      sample.null_block = svd.left.columns(n, mrows);
    } else {
      const SvdPathSample& prev = path.samples.back();
      // Singular vectors live on both sides; average the two overlaps.
      std::vector<std::vector<double>> affinity =
          block_affinity(prev.left_blocks, svd.left.columns(0, n));
      const std::vector<std::vector<double>> right_affinity =
          block_affinity(prev.right_blocks, svd.right);
      for (std::size_t b = 0; b < affinity.size(); ++b)
        for (std::size_t c = 0; c < affinity[b].size(); ++c)
          affinity[b][c] = 0.5 * (affinity[b][c] + right_affinity[b][c]);
      const auto assignment = assign_to_blocks(prev.block_sings, svd.singulars, affinity);
      for (std::size_t j = 0; j < k; ++j) {
        const ProcrustesResult align_left =
            align_procrustes(prev.left_blocks[j], gather_columns(svd.left, assignment[j]));
        const ProcrustesResult align_right =
            align_procrustes(prev.right_blocks[j], gather_columns(svd.right, assignment[j]));
        update_gauge_stats(path.metadata, align_left);
        update_gauge_stats(path.metadata, align_right);
        sample.left_blocks[j] = align_left.aligned;
        sample.right_blocks[j] = align_right.aligned;
        sample.block_sings[j].reserve(assignment[j].size());
        for (std::size_t c : assignment[j]) sample.block_sings[j].push_back(svd.singulars[c]);
      }
      if (mrows > n) {
        const ProcrustesResult align_null =
            align_procrustes(prev.null_block, svd.left.columns(n, mrows));
        update_gauge_stats(path.metadata, align_null);
        sample.null_block = align_null.aligned;
      } else {
        sample.null_block = ComplexMatrix(mrows, 0);
      }
    }

    for (std::size_t j = 0; j < k; ++j)
      sample.sigma_blocks[j] = adjoint(sample.left_blocks[j]) * m * sample.right_blocks[j];

    const std::vector<double> gaps = pairwise_block_gaps(sample.block_sings);
    const double scale = svd.singulars.front();
    for (std::size_t j = 0; j < k; ++j) {
      gap_rows[j][idx] = gaps[j];
      if (gaps[j] < kAmbiguityRel * scale)
        path.metadata.block_ambiguity.push_back({idx, j, gaps[j]});
    }

    if (idx > 0) {
      const SvdPathSample& prev = path.samples.back();
      const double dt = t - prev.t;
      for (std::size_t j = 0; j < k; ++j) {
        const double prev_gap = gap_rows[j][idx - 1];
        if (!(prev_gap > 0.0) || !std::isfinite(prev_gap)) continue;
        const double moved =
            std::max(frobenius_norm(sample.left_blocks[j] - prev.left_blocks[j]),
                     frobenius_norm(sample.right_blocks[j] - prev.right_blocks[j]));
        if (moved > kContinuityConst * dt * delta_fro / prev_gap + 1e-12)
          path.metadata.continuity_flags.push_back({idx, j, moved});
      }
    }

    path.samples.push_back(std::move(sample));
  }

  path.metadata.max_spacing = max_spacing(grid);
  return path;
}

}  // namespace

SvdPath track_svd_path(const ComplexMatrix& b, const ComplexMatrix& db,
                       const BlockPartition& partition, std::size_t grid_points) {
  if (b.rows() < b.cols())
    throw Error(ErrorCode::ShapeError, "track_svd_path requires rows >= cols; transpose first");
  if (b.rows() != db.rows() || b.cols() != db.cols())
    throw Error(ErrorCode::ShapeError, "track_svd_path: base and delta shapes differ");
  require_finite(b, "track_svd_path base");
  require_finite(db, "track_svd_path delta");
  partition.validate(b.cols());
  if (grid_points < 2)
    throw Error(ErrorCode::InvalidArgument, "track_svd_path: need at least 2 grid points");

  std::vector<double> grid = uniform_grid(grid_points);
  std::vector<std::vector<double>> gap_rows;
  SvdPath path = track_svd_on_grid(b, db, partition, grid, gap_rows);

  const std::vector<double> midpoints = refinement_midpoints(grid, gap_rows);
  if (!midpoints.empty()) {
    grid = merge_grid(grid, midpoints);
    path = track_svd_on_grid(b, db, partition, grid, gap_rows);
    path.metadata.adaptive_insertions = midpoints.size();
  }
  path.metadata.requested_points = grid_points;
  return path;
}

}  // namespace mptk
