#include "mptk/bounds_eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bounds_detail.hpp"
#include "mptk/decompositions.hpp"
#include "mptk/subspace.hpp"

namespace mptk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

const char* bound_id_name(BoundId id) {
  switch (id) {
    case BoundId::HoffmanWielandt: return "hoffman_wielandt";
    case BoundId::DavisKahan: return "davis_kahan";
    case BoundId::LiSunCombined: return "li_sun_combined";
    case BoundId::CombinedAll: return "combined_all";
    case BoundId::CombinedSingle: return "combined_single";
    case BoundId::CombinedSingleSin: return "combined_single_sin";
    case BoundId::CombinedSingleSinOnly: return "combined_single_sin_only";
    case BoundId::TotalSpectral: return "total_spectral";
    case BoundId::GapLower: return "gap_lower";
    case BoundId::MeanValue: return "mean_value";
    case BoundId::Mirsky: return "mirsky";
    case BoundId::SvdCombinedAll: return "svd_combined_all";
    case BoundId::SvdCombinedSingle: return "svd_combined_single";
    case BoundId::SvdCombinedSingleSin: return "svd_combined_single_sin";
    case BoundId::SvdGapLower: return "svd_gap_lower";
    case BoundId::SvdMeanValue: return "svd_mean_value";
  }
  return "unknown";
}

double relative_slack(const BoundReport& report) {
  if (std::abs(report.rhs) >= 1e-12) return report.slack / report.rhs;
  return report.slack;
}

bool bound_satisfied(const BoundReport& report) {
  if (!report.applicable) return true;
  if (!std::isfinite(report.slack)) return report.lhs <= report.rhs;
  if (report.id == BoundId::GapLower || report.id == BoundId::SvdGapLower)
    return report.slack >= -1e-9;
  return relative_slack(report) >= -1e-8;
}

namespace detail {

double l2_diff(const std::vector<double>& a, const std::vector<double>& b, const char* what) {
  if (a.size() != b.size())
    throw Error(ErrorCode::RankMismatch, std::string(what) + ": value counts differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

std::vector<double> pooled_values(const std::vector<std::vector<double>>& blocks) {
  std::vector<double> out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

BoundReport finish(BoundReport report) {
  if (std::isinf(report.lhs) && std::isinf(report.rhs) &&
      std::signbit(report.lhs) == std::signbit(report.rhs)) {
    report.slack = 0.0;
  } else {
    report.slack = report.rhs - report.lhs;
  }
  return report;
}

/// Shared setup for the two classical subspace bounds.
struct ClassicalSetup {
  std::vector<double> proj_eigs_a;   // block spectrum of A on span(U1)
  std::vector<double> proj_eigs_at;  // block spectrum of At on span(U1t)
  double delta12 = kInf;             // +inf when the complement is empty
  bool complement_empty = false;
  SinTheta sines;
  double residual_rhs = 0.0;  // ||(At - A) U1||_F
};

void require_invariant(const ComplexMatrix& a, const ComplexMatrix& u, const char* what) {
  const ComplexMatrix proj = adjoint(u) * a * u;
  const double residual = frobenius_norm(a * u - u * proj);
  if (residual > 1e-8 * frobenius_norm(a))
    throw Error(ErrorCode::NotInvariant,
                std::string(what) + " does not span an invariant subspace (residual " +
                    std::to_string(residual) + ")");
}

ClassicalSetup classical_setup(const ComplexMatrix& a, const ComplexMatrix& at,
                               const ComplexMatrix& u1, const ComplexMatrix& u1t) {
  require_hermitian(a, "davis_kahan/li_sun first matrix");
  require_hermitian(at, "davis_kahan/li_sun second matrix");
  if (a.rows() != at.rows())
    throw Error(ErrorCode::ShapeError, "matrices have different sizes");
  if (u1.rows() != a.rows() || u1t.rows() != at.rows())
    throw Error(ErrorCode::ShapeError, "subspace bases do not match matrix size");
  if (u1.cols() != u1t.cols())
    throw Error(ErrorCode::RankMismatch, "subspace dimensions differ");
  require_invariant(a, u1, "first basis");
  require_invariant(at, u1t, "second basis");

  ClassicalSetup setup;
  setup.sines = sin_theta(u1, u1t);
  setup.residual_rhs = frobenius_norm((at - a) * u1);

  const SpectralDecomposition proj_a = eigh_sorted(hermitian_part(adjoint(u1) * a * u1));
  const SpectralDecomposition proj_at = eigh_sorted(hermitian_part(adjoint(u1t) * at * u1t));
  setup.proj_eigs_a = proj_a.eigenvalues;
  setup.proj_eigs_at = proj_at.eigenvalues;

  // Remove the perturbed block spectrum from the full perturbed spectrum
  // (multiset difference with a pairing tolerance), then take the minimum
  // distance from the unperturbed block spectrum to what remains.
  const SpectralDecomposition full_at = eigh_sorted(at);
  const double pair_tol =
      1e-9 * std::max(std::abs(full_at.eigenvalues.front()), std::abs(full_at.eigenvalues.back()));
  std::vector<char> used(full_at.eigenvalues.size(), 0);
  for (double value : setup.proj_eigs_at) {
    std::size_t best = full_at.eigenvalues.size();
    double best_dist = kInf;
    for (std::size_t i = 0; i < full_at.eigenvalues.size(); ++i) {
      if (used[i]) continue;
      const double dist = std::abs(full_at.eigenvalues[i] - value);
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    if (best == full_at.eigenvalues.size() || best_dist > pair_tol)
      throw Error(ErrorCode::NotInvariant,
                  "block eigenvalue " + std::to_string(value) +
                      " not found in the perturbed spectrum");
    used[best] = 1;
  }
  setup.complement_empty = true;
  for (std::size_t i = 0; i < full_at.eigenvalues.size(); ++i) {
    if (used[i]) continue;
    setup.complement_empty = false;
    for (double mine : setup.proj_eigs_a)
      setup.delta12 = std::min(setup.delta12, std::abs(mine - full_at.eigenvalues[i]));
  }
  return setup;
}

}  // namespace detail

BoundReport hoffman_wielandt(const ComplexMatrix& a, const ComplexMatrix& at) {
  require_hermitian(a, "hoffman_wielandt first matrix");
  require_hermitian(at, "hoffman_wielandt second matrix");
  if (a.rows() != at.rows())
    throw Error(ErrorCode::ShapeError, "hoffman_wielandt: sizes differ");

  BoundReport report;
  report.id = BoundId::HoffmanWielandt;
  report.lhs = detail::l2_diff(eigh_sorted(at).eigenvalues, eigh_sorted(a).eigenvalues,
                               "hoffman_wielandt");
  report.rhs = frobenius_norm(at - a);
  return detail::finish(std::move(report));
}

BoundReport davis_kahan(const ComplexMatrix& a, const ComplexMatrix& at,
                        const ComplexMatrix& u1, const ComplexMatrix& u1t) {
  const detail::ClassicalSetup setup = detail::classical_setup(a, at, u1, u1t);

  BoundReport report;
  report.id = BoundId::DavisKahan;
  report.lhs = setup.complement_empty ? 0.0 : setup.delta12 * setup.sines.fro;
  report.rhs = setup.residual_rhs;
  report.applicable = setup.delta12 > 0.0;
  if (!report.applicable) report.condition_note = "separation delta12 is zero";
  if (setup.complement_empty) report.condition_note = "full-space block: sin terms vanish";
  report.components["delta12"] = setup.delta12;
  report.components["sin_theta_fro"] = setup.sines.fro;
  report.components["sin_theta_spectral"] = setup.sines.spectral;
  return detail::finish(std::move(report));
}

BoundReport li_sun_combined(const ComplexMatrix& a, const ComplexMatrix& at,
                            const ComplexMatrix& u1, const ComplexMatrix& u1t) {
  const detail::ClassicalSetup setup = detail::classical_setup(a, at, u1, u1t);
  const double eig_term =
      detail::l2_diff(setup.proj_eigs_at, setup.proj_eigs_a, "li_sun_combined");

  BoundReport report;
  report.id = BoundId::LiSunCombined;
  const double cos2 = 1.0 - setup.sines.spectral * setup.sines.spectral;
  report.lhs = cos2 * eig_term * eig_term;
  if (!setup.complement_empty)
    report.lhs += setup.delta12 * setup.delta12 * setup.sines.fro * setup.sines.fro;
  report.rhs = setup.residual_rhs * setup.residual_rhs;
  report.applicable = setup.delta12 > 0.0;
  if (!report.applicable) report.condition_note = "separation delta12 is zero";
  report.components["delta12"] = setup.delta12;
  report.components["eig_term"] = eig_term;
  report.components["sin_theta_fro"] = setup.sines.fro;
  report.components["sin_theta_spectral"] = setup.sines.spectral;
  return detail::finish(std::move(report));
}

BoundReport combined_all_blocks(const EigPath& path, const GapProfile& gaps) {
  const EigPathSample& start = path.samples.front();
  const EigPathSample& end = path.samples.back();
  const std::size_t k = path.partition.count();

  BoundReport report;
  report.id = BoundId::CombinedAll;
  const double eig_term = detail::l2_diff(detail::pooled_values(end.block_eigs),
                                          detail::pooled_values(start.block_eigs),
                                          "combined_all_blocks");
  report.lhs = eig_term * eig_term;
  report.components["eigenvalue_term"] = eig_term * eig_term;
  for (std::size_t j = 0; j < k; ++j) {
    const std::string tag = "block_" + std::to_string(j + 1);
    const double gap_min = gaps.minima[j];
    report.components[tag + "_gap_min"] = gap_min;
    if (std::isinf(gap_min)) {
      report.condition_note = "single block: subspace sum is empty";
      continue;
    }
    const double dist = frobenius_norm(end.basis_blocks[j] - start.basis_blocks[j]);
    const double term = gap_min * gap_min * dist * dist;
    report.components[tag + "_distance"] = dist;
    report.components[tag + "_term"] = term;
    report.lhs += term;
  }
  const double delta_fro = frobenius_norm(path.delta);
  report.rhs = delta_fro * delta_fro;
  return detail::finish(std::move(report));
}

CombinedSingleReports combined_single_block(const EigPath& path, const GapProfile& gaps,
                                            std::size_t target_block) {
  const std::size_t k = path.partition.count();
  if (target_block >= k)
    throw Error(ErrorCode::InvalidArgument, "combined_single_block: target block out of range");
  const EigPathSample& start = path.samples.front();
  const EigPathSample& end = path.samples.back();

  const double x = matrix_norm(path.delta, NormKind::Spectral);
  const double gap = gaps.minima[target_block];
  const double eig_term = detail::l2_diff(end.block_eigs[target_block],
                                          start.block_eigs[target_block],
                                          "combined_single_block");
  const double dist =
      frobenius_norm(end.basis_blocks[target_block] - start.basis_blocks[target_block]);
  const SinTheta sines =
      sin_theta(start.basis_blocks[target_block], end.basis_blocks[target_block]);
  const double rhs_norm = frobenius_norm(path.delta * start.basis_blocks[target_block]);
  const bool applicable = x < gap;
  const bool gap_infinite = std::isinf(gap);

  const auto base_report = [&](BoundId id) {
    BoundReport r;
    r.id = id;
    r.applicable = applicable;
    if (!applicable) r.condition_note = "hypothesis ||delta||_2 < gap minimum fails";
    if (gap_infinite) r.condition_note = "single block: subspace term vanishes";
    r.components["two_norm_delta"] = x;
    r.components["gap_min"] = gap;
    r.components["eig_term"] = eig_term;
    r.components["basis_distance"] = dist;
    r.components["sin_theta_fro"] = sines.fro;
    return r;
  };

  CombinedSingleReports out;
  out.main = base_report(BoundId::CombinedSingle);
  out.sin_f = base_report(BoundId::CombinedSingleSin);
  out.sin_only = base_report(BoundId::CombinedSingleSinOnly);

  const double shrink = gap_infinite ? 1.0 : (1.0 - x / gap);
  const double weight = gap_infinite ? 0.0 : (gap - x);
  out.main.lhs = shrink * shrink * eig_term * eig_term + weight * weight * dist * dist;
  out.main.rhs = rhs_norm * rhs_norm;
  out.sin_f.lhs = shrink * shrink * eig_term * eig_term + weight * weight * sines.fro * sines.fro;
  out.sin_f.rhs = rhs_norm * rhs_norm;
  out.sin_only.lhs = sines.fro;
  out.sin_only.rhs = gap_infinite ? 0.0 : rhs_norm / (gap - x);

  out.main = detail::finish(std::move(out.main));
  out.sin_f = detail::finish(std::move(out.sin_f));
  out.sin_only = detail::finish(std::move(out.sin_only));
  return out;
}

DeltaTilde compute_delta_tilde(const EigPath& path) {
  const EigPathSample& start = path.samples.front();
  const EigPathSample& end = path.samples.back();
  const std::size_t k = path.partition.count();

  DeltaTilde out;
  out.per_block.resize(k);
  out.mixed_gap.resize(k);
  out.eig_shift.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    double mixed = kInf;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == j) continue;
      for (double mine : start.block_eigs[j])
        for (double theirs : end.block_eigs[i]) mixed = std::min(mixed, std::abs(mine - theirs));
    }
    const double shift =
        detail::l2_diff(end.block_eigs[j], start.block_eigs[j], "compute_delta_tilde");
    out.mixed_gap[j] = mixed;
    out.eig_shift[j] = shift;
    if (std::isinf(mixed)) {
      out.per_block[j] = kInf;
    } else {
      const double corrected = mixed * mixed - shift * shift;
      out.per_block[j] = corrected > 0.0 ? std::sqrt(corrected) : 0.0;
    }
  }
  return out;
}

BoundReport total_bound(const EigPath& path) {
  const EigPathSample& start = path.samples.front();
  const EigPathSample& end = path.samples.back();
  const std::size_t k = path.partition.count();
  const DeltaTilde dt = compute_delta_tilde(path);

  BoundReport report;
  report.id = BoundId::TotalSpectral;
  const double eig_term = detail::l2_diff(detail::pooled_values(end.block_eigs),
                                          detail::pooled_values(start.block_eigs),
                                          "total_bound");
  report.lhs = eig_term * eig_term;
  report.components["eigenvalue_term"] = eig_term * eig_term;
  for (std::size_t j = 0; j < k; ++j) {
    const std::string tag = "block_" + std::to_string(j + 1);
    report.components[tag + "_delta_tilde"] = dt.per_block[j];
    report.components[tag + "_mixed_gap"] = dt.mixed_gap[j];
    report.components[tag + "_eig_shift"] = dt.eig_shift[j];
    if (std::isinf(dt.per_block[j])) {
      report.condition_note = "single block: subspace sum is empty";
      continue;
    }
    const SinTheta sines = sin_theta(start.basis_blocks[j], end.basis_blocks[j]);
    report.components[tag + "_sin_spectral"] = sines.spectral;
    if (dt.per_block[j] == 0.0 && dt.mixed_gap[j] > 0.0 &&
        report.condition_note.empty())
      report.condition_note = "block " + std::to_string(j + 1) +
                              ": eigenvalue shift exceeds mixed gap, term dropped";
    report.lhs += dt.per_block[j] * dt.per_block[j] * sines.spectral * sines.spectral;
  }
  const double delta_fro = frobenius_norm(path.delta);
  report.rhs = delta_fro * delta_fro;
  return detail::finish(std::move(report));
}

std::vector<BoundReport> gap_lower_bound(const GapProfile& gaps, const ComplexMatrix& da) {
  const double x = matrix_norm(da, NormKind::Spectral);
  std::vector<BoundReport> out;
  out.reserve(gaps.minima.size());
  for (std::size_t j = 0; j < gaps.minima.size(); ++j) {
    BoundReport report;
    report.id = BoundId::GapLower;
    const double at_zero = gaps.per_block[j].front();
    report.lhs = at_zero - 2.0 * x;
    report.rhs = gaps.minima[j];
    report.applicable = 2.0 * x < at_zero;
    if (!report.applicable)
      report.condition_note = "condition 2 ||delta||_2 < gap(0) fails";
    if (std::isinf(at_zero))
      report.condition_note = "single block: gap unconstrained";
    report.components["block"] = static_cast<double>(j + 1);
    report.components["gap_at_zero"] = at_zero;
    report.components["two_norm_delta"] = x;
    report.components["predicted_min"] = report.lhs;
    out.push_back(detail::finish(std::move(report)));
  }
  return out;
}

BoundReport mvt_check(const EigPath& path, const GapProfile& gaps, std::size_t target_block) {
  const std::size_t k = path.partition.count();
  if (target_block >= k)
    throw Error(ErrorCode::InvalidArgument, "mvt_check: target block out of range");
  const EigPathSample& start = path.samples.front();
  const EigPathSample& end = path.samples.back();

  const double gap = gaps.minima[target_block];
  const double eig_term =
      detail::l2_diff(end.block_eigs[target_block], start.block_eigs[target_block], "mvt_check");
  const double dist =
      frobenius_norm(end.basis_blocks[target_block] - start.basis_blocks[target_block]);

  BoundReport report;
  report.id = BoundId::MeanValue;
  report.lhs = eig_term * eig_term;
  if (std::isinf(gap)) {
    report.condition_note = "single block: subspace term vanishes";
  } else {
    report.lhs += gap * gap * dist * dist;
  }

  double worst = 0.0;
  double worst_t = 0.0;
  for (const EigPathSample& sample : path.samples) {
    const double value = frobenius_norm(path.delta * sample.basis_blocks[target_block]);
    if (value * value > worst) {
      worst = value * value;
      worst_t = sample.t;
    }
  }
  report.rhs = worst;
  report.components["gap_min"] = gap;
  report.components["eig_term"] = eig_term;
  report.components["basis_distance"] = dist;
  report.components["worst_t"] = worst_t;
  return detail::finish(std::move(report));
}

}  // namespace mptk
