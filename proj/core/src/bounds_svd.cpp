#include "mptk/bounds_svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "bounds_detail.hpp"
#include "mptk/decompositions.hpp"
#include "mptk/subspace.hpp"

namespace mptk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> sorted_singulars(const ComplexMatrix& b) {
  // svd_sorted wants rows >= cols; singular values are transpose-invariant.
  if (b.rows() >= b.cols()) return svd_sorted(b).singulars;
  return svd_sorted(adjoint(b)).singulars;
}

/// ||delta V||_F^2 + ||W^H delta||_F^2 for one sample's target-block factors.
double residual_pair(const ComplexMatrix& delta, const ComplexMatrix& w, const ComplexMatrix& v) {
  const double right = frobenius_norm(delta * v);
  const double left = frobenius_norm(adjoint(w) * delta);
  return right * right + left * left;
}

}  // namespace

BoundReport mirsky(const ComplexMatrix& b, const ComplexMatrix& bt) {
  if (b.rows() != bt.rows() || b.cols() != bt.cols())
    throw Error(ErrorCode::ShapeError, "mirsky: shapes differ");

  BoundReport report;
  report.id = BoundId::Mirsky;
  report.lhs = detail::l2_diff(sorted_singulars(bt), sorted_singulars(b), "mirsky");
  report.rhs = frobenius_norm(bt - b);
  return detail::finish(std::move(report));
}

BoundReport combined_all_svd(const SvdPath& path, const SvdGapProfile& gaps) {
  const SvdPathSample& start = path.samples.front();
  const SvdPathSample& end = path.samples.back();
  const std::size_t k = path.partition.count();
  const bool tall = path.base.rows() > path.base.cols();

  BoundReport report;
  report.id = BoundId::SvdCombinedAll;
  const double sing_term = detail::l2_diff(detail::pooled_values(end.block_sings),
                                           detail::pooled_values(start.block_sings),
                                           "combined_all_svd");
  report.lhs = sing_term * sing_term;
  report.components["singular_value_term"] = sing_term * sing_term;
  for (std::size_t j = 0; j < k; ++j) {
    const std::string tag = "block_" + std::to_string(j + 1);
    const double rho_min = gaps.rho.minima[j];
    // Tall inputs weigh the left factors by rho_hat; the square form puts
    // rho on both factors, so that is the effective rho_hat reported.
    const double rho_hat_min = tall ? gaps.rho_hat.minima[j] : rho_min;
    report.components[tag + "_rho_min"] = rho_min;
    report.components[tag + "_rho_hat_min"] = rho_hat_min;

    // A square single-block run leaves both weights infinite and the terms
    // are dropped by the empty-sum convention.
    const double left_dist = frobenius_norm(end.left_blocks[j] - start.left_blocks[j]);
    report.components[tag + "_left_distance"] = left_dist;
    if (std::isinf(rho_hat_min)) {
      report.condition_note = "single block: left subspace sum is empty";
    } else {
      const double term = 0.5 * rho_hat_min * rho_hat_min * left_dist * left_dist;
      report.components[tag + "_left_term"] = term;
      report.lhs += term;
    }

    const double right_dist = frobenius_norm(end.right_blocks[j] - start.right_blocks[j]);
    report.components[tag + "_right_distance"] = right_dist;
    if (std::isinf(rho_min)) {
      report.condition_note = "single block: right subspace sum is empty";
    } else {
      const double term = 0.5 * rho_min * rho_min * right_dist * right_dist;
      report.components[tag + "_right_term"] = term;
      report.lhs += term;
    }
  }
  if (tall) {
    const double null_dist = frobenius_norm(end.null_block - start.null_block);
    const double term = 0.5 * gaps.sigma_min * gaps.sigma_min * null_dist * null_dist;
    report.components["sigma_min"] = gaps.sigma_min;
    report.components["null_distance"] = null_dist;
    report.components["null_term"] = term;
    report.lhs += term;
  }
  const double delta_fro = frobenius_norm(path.delta);
  report.rhs = delta_fro * delta_fro;
  return detail::finish(std::move(report));
}

SvdCombinedReports combined_single_svd(const SvdPath& path, const SvdGapProfile& gaps,
                                       std::size_t target_block) {
  const std::size_t k = path.partition.count();
  if (target_block >= k)
    throw Error(ErrorCode::InvalidArgument, "combined_single_svd: target block out of range");
  const SvdPathSample& start = path.samples.front();
  const SvdPathSample& end = path.samples.back();
  const bool tall = path.base.rows() > path.base.cols();

  const double x = matrix_norm(path.delta, NormKind::Spectral);
  const double rho_min = gaps.rho.minima[target_block];
  // The square case of the theorem replaces rho_hat by rho throughout.
  const double rho_hat_min = tall ? gaps.rho_hat.minima[target_block] : rho_min;
  const double sing_term = detail::l2_diff(end.block_sings[target_block],
                                           start.block_sings[target_block],
                                           "combined_single_svd");
  const double left_dist =
      frobenius_norm(end.left_blocks[target_block] - start.left_blocks[target_block]);
  const double right_dist =
      frobenius_norm(end.right_blocks[target_block] - start.right_blocks[target_block]);
  const SinTheta left_sines =
      sin_theta(start.left_blocks[target_block], end.left_blocks[target_block]);
  const SinTheta right_sines =
      sin_theta(start.right_blocks[target_block], end.right_blocks[target_block]);
  const double residuals =
      residual_pair(path.delta, start.left_blocks[target_block], start.right_blocks[target_block]);

  // Tall inputs need ||delta||_2 below the coupled gap rho_hat and carry the
  // amplification on the right-hand side; square inputs need it below rho
  // and carry the shrink factors on the left.
  const double hypothesis_gap = tall ? rho_hat_min : rho_min;
  const bool applicable = x < hypothesis_gap;
  const bool rho_infinite = std::isinf(rho_min);

  const auto base_report = [&](BoundId id) {
    BoundReport r;
    r.id = id;
    r.applicable = applicable;
    if (!applicable)
      r.condition_note = tall ? "hypothesis ||delta||_2 < rho_hat minimum fails"
                              : "hypothesis ||delta||_2 < rho minimum fails";
    if (rho_infinite) r.condition_note = "single block: right subspace term dropped";
    r.components["two_norm_delta"] = x;
    r.components["rho_min"] = rho_min;
    r.components["rho_hat_min"] = rho_hat_min;
    r.components["sing_term"] = sing_term;
    r.components["left_distance"] = left_dist;
    r.components["right_distance"] = right_dist;
    r.components["sin_left_fro"] = left_sines.fro;
    r.components["sin_right_fro"] = right_sines.fro;
    r.components["residual_rhs"] = residuals;
    return r;
  };

  SvdCombinedReports out;
  out.main = base_report(BoundId::SvdCombinedSingle);
  out.sin_variant = base_report(BoundId::SvdCombinedSingleSin);

  const double ratio = tall ? rho_hat_min / (rho_hat_min - x) : 1.0;
  const auto lhs_rhs = [&](double left_sq, double right_sq) -> std::pair<double, double> {
    if (tall) {
      const double left_term = rho_hat_min * rho_hat_min * left_sq;
      const double right_term = rho_infinite ? 0.0 : rho_min * rho_min * right_sq;
      return {2.0 * sing_term * sing_term + left_term + right_term,
              ratio * ratio * residuals};
    }
    const double shrink = rho_infinite ? 1.0 : (1.0 - x / rho_min);
    const double weight = rho_infinite ? 0.0 : (rho_min - x);
    return {2.0 * shrink * shrink * sing_term * sing_term +
                weight * weight * (left_sq + right_sq),
            residuals};
  };

  const auto [main_lhs, main_rhs] = lhs_rhs(left_dist * left_dist, right_dist * right_dist);
  out.main.lhs = main_lhs;
  out.main.rhs = main_rhs;
  const auto [sin_lhs, sin_rhs] =
      lhs_rhs(left_sines.fro * left_sines.fro, right_sines.fro * right_sines.fro);
  out.sin_variant.lhs = sin_lhs;
  out.sin_variant.rhs = sin_rhs;
  if (tall) {
    out.main.components["amplification"] = ratio * ratio;
    out.sin_variant.components["amplification"] = ratio * ratio;
  }

  out.main = detail::finish(std::move(out.main));
  out.sin_variant = detail::finish(std::move(out.sin_variant));
  return out;
}

std::vector<BoundReport> svd_gap_lower_bound(const SvdGapProfile& gaps, const ComplexMatrix& db) {
  const double x = matrix_norm(db, NormKind::Spectral);
  const bool tall = db.rows() > db.cols();
  const std::size_t k = gaps.rho.minima.size();
  std::vector<BoundReport> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    BoundReport report;
    report.id = BoundId::SvdGapLower;
    const double rho_zero = gaps.rho.per_block[j].front();
    const double sigma_zero = gaps.sigma.per_block[j].front();
    const double predicted_rho = rho_zero - 2.0 * x;
    const double predicted_sigma = sigma_zero - x;
    report.components["block"] = static_cast<double>(j + 1);
    report.components["rho_at_zero"] = rho_zero;
    report.components["sigma_at_zero"] = sigma_zero;
    report.components["two_norm_delta"] = x;
    report.components["predicted_rho_min"] = predicted_rho;
    report.components["predicted_sigma_min"] = predicted_sigma;
    report.components["condition_rho"] = 2.0 * x < rho_zero ? 1.0 : 0.0;
    report.components["condition_sigma"] = x <= sigma_zero ? 1.0 : 0.0;
    if (tall) {
      report.lhs = std::min(predicted_rho, predicted_sigma);
      report.rhs = gaps.rho_hat.minima[j];
      report.applicable = x <= std::min(0.5 * rho_zero, sigma_zero);
      if (!report.applicable)
        report.condition_note = "condition ||delta||_2 <= min(rho(0)/2, sigma(0)) fails";
    } else {
      report.lhs = predicted_rho;
      report.rhs = gaps.rho.minima[j];
      report.applicable = 2.0 * x < rho_zero;
      if (!report.applicable)
        report.condition_note = "condition 2 ||delta||_2 < rho(0) fails";
    }
    if (std::isinf(rho_zero) && !tall)
      report.condition_note = "single block: gap unconstrained";
    report.components["predicted_min"] = report.lhs;
    out.push_back(detail::finish(std::move(report)));
  }
  return out;
}

BoundReport svd_mvt_check(const SvdPath& path, const SvdGapProfile& gaps,
                          std::size_t target_block) {
  const std::size_t k = path.partition.count();
  if (target_block >= k)
    throw Error(ErrorCode::InvalidArgument, "svd_mvt_check: target block out of range");
  const SvdPathSample& start = path.samples.front();
  const SvdPathSample& end = path.samples.back();
  const bool tall = path.base.rows() > path.base.cols();

  const double rho_min = gaps.rho.minima[target_block];
  // The square form weighs both factors by rho; rho_hat is tall-only.
  const double rho_hat_min = tall ? gaps.rho_hat.minima[target_block] : rho_min;
  const double sing_term = detail::l2_diff(end.block_sings[target_block],
                                           start.block_sings[target_block], "svd_mvt_check");
  const double left_dist =
      frobenius_norm(end.left_blocks[target_block] - start.left_blocks[target_block]);
  const double right_dist =
      frobenius_norm(end.right_blocks[target_block] - start.right_blocks[target_block]);

  BoundReport report;
  report.id = BoundId::SvdMeanValue;
  report.lhs = 2.0 * sing_term * sing_term;
  // Infinite weights (single-block runs) drop their term.
  if (std::isinf(rho_hat_min)) {
    report.condition_note = "single block: left subspace term dropped";
  } else {
    report.lhs += rho_hat_min * rho_hat_min * left_dist * left_dist;
  }
  if (std::isinf(rho_min)) {
    report.condition_note = "single block: right subspace term dropped";
  } else {
    report.lhs += rho_min * rho_min * right_dist * right_dist;
  }

  double worst = 0.0;
  double worst_t = 0.0;
  for (const SvdPathSample& sample : path.samples) {
    const double value = residual_pair(path.delta, sample.left_blocks[target_block],
                                       sample.right_blocks[target_block]);
    if (value > worst) {
      worst = value;
      worst_t = sample.t;
    }
  }
  report.rhs = worst;
  report.components["rho_min"] = rho_min;
  report.components["rho_hat_min"] = rho_hat_min;
  report.components["sing_term"] = sing_term;
  report.components["left_distance"] = left_dist;
  report.components["right_distance"] = right_dist;
  report.components["worst_t"] = worst_t;
  return detail::finish(std::move(report));
}

}  // namespace mptk
