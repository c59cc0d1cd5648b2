#include "mptk/gap_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mptk {

namespace {

constexpr double kCollapseRel = 1e-12;

std::vector<double> row_minima(const std::vector<std::vector<double>>& rows) {
  std::vector<double> out(rows.size(), std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (double v : rows[j]) out[j] = std::min(out[j], v);
  return out;
}

void floor_collapsed(std::vector<double>& minima, double scale) {
  for (double& v : minima)
    if (std::isfinite(v) && v <= kCollapseRel * scale) v = 0.0;
}

}  // namespace

GapProfile gap_profile_eig(const EigPath& path) {
  GapProfile out;
  const std::size_t k = path.partition.count();
  out.grid.reserve(path.samples.size());
  out.per_block.assign(k, {});
  for (std::size_t j = 0; j < k; ++j) out.per_block[j].reserve(path.samples.size());

  double scale = 0.0;
  for (const EigPathSample& sample : path.samples) {
    out.grid.push_back(sample.t);
    const std::vector<double> gaps = pairwise_block_gaps(sample.block_eigs);
    for (std::size_t j = 0; j < k; ++j) {
      out.per_block[j].push_back(gaps[j]);
      for (double v : sample.block_eigs[j]) scale = std::max(scale, std::abs(v));
    }
  }
  out.minima = row_minima(out.per_block);
  floor_collapsed(out.minima, scale);
  return out;
}

SvdGapProfile gap_profile_svd(const SvdPath& path) {
  SvdGapProfile out;
  const std::size_t k = path.partition.count();

  std::vector<double> grid;
  grid.reserve(path.samples.size());
  out.rho.per_block.assign(k, {});
  out.sigma.per_block.assign(k, {});
  out.rho_hat.per_block.assign(k, {});

  double scale = 0.0;
  for (const SvdPathSample& sample : path.samples) {
    grid.push_back(sample.t);
    const std::vector<double> rho = pairwise_block_gaps(sample.block_sings);
    for (std::size_t j = 0; j < k; ++j) {
      const double sigma_min_j = sample.block_sings[j].back();
      out.rho.per_block[j].push_back(rho[j]);
      out.sigma.per_block[j].push_back(sigma_min_j);
      // rho_hat couples the separation to the block's smallest singular value
      // by definition, for every shape; square-case bounds substitute rho.
      out.rho_hat.per_block[j].push_back(std::min(rho[j], sigma_min_j));
      scale = std::max(scale, sample.block_sings[j].front());
    }
  }

  out.rho.grid = grid;
  out.sigma.grid = grid;
  out.rho_hat.grid = grid;
  out.rho.minima = row_minima(out.rho.per_block);
  out.sigma.minima = row_minima(out.sigma.per_block);
  out.rho_hat.minima = row_minima(out.rho_hat.per_block);
  floor_collapsed(out.rho.minima, scale);
  floor_collapsed(out.sigma.minima, scale);
  floor_collapsed(out.rho_hat.minima, scale);

  out.sigma_min = std::numeric_limits<double>::infinity();
  for (double v : out.sigma.minima) out.sigma_min = std::min(out.sigma_min, v);
  return out;
}

}  // namespace mptk
