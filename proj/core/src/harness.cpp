#include "mptk/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>
#include <utility>

#include "bounds_detail.hpp"
#include "mptk/bounds_eig.hpp"
#include "mptk/bounds_svd.hpp"
#include "mptk/decompositions.hpp"
#include "mptk/gap_profile.hpp"
#include "mptk/path_tracking.hpp"
#include "mptk/rng.hpp"
#include "mptk/subspace.hpp"

namespace mptk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

const char* problem_kind_name(ProblemKind kind) {
  return kind == ProblemKind::Hermitian ? "hermitian" : "general";
}

GeneratedProblem gen_problem(const ProblemSpec& spec) {
  const std::size_t n = spec.n;
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "gen_problem: n must be positive");
  const std::size_t m = spec.m == 0 ? n : spec.m;
  if (spec.kind == ProblemKind::Hermitian && m != n)
    throw Error(ErrorCode::InvalidArgument, "gen_problem: hermitian problems are square");
  if (m < n) throw Error(ErrorCode::ShapeError, "gen_problem: rows must be >= cols");
  spec.partition.validate(n);
  if (spec.spectrum_plan.size() != n)
    throw Error(ErrorCode::CountMismatch, "gen_problem: spectrum plan size differs from n");
  for (std::size_t i = 1; i < n; ++i)
    if (spec.spectrum_plan[i] > spec.spectrum_plan[i - 1])
      throw Error(ErrorCode::InvalidArgument, "gen_problem: spectrum plan must be nonincreasing");
  if (spec.kind == ProblemKind::General)
    for (double value : spec.spectrum_plan)
      if (value < 0.0)
        throw Error(ErrorCode::InvalidArgument, "gen_problem: singular values must be >= 0");
  if (!std::isfinite(spec.perturb_norm) || spec.perturb_norm < 0.0)
    throw Error(ErrorCode::InvalidArgument, "gen_problem: invalid perturbation norm");

  Rng rng(spec.seed);
  GeneratedProblem out;
  ComplexMatrix raw;
  if (spec.kind == ProblemKind::Hermitian) {
    const ComplexMatrix q = rng.haar_unitary(n);
    ComplexMatrix scaled = q;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r) scaled(r, j) = q(r, j) * spec.spectrum_plan[j];
    out.base = hermitian_part(scaled * adjoint(q));
    raw = rng.hermitian_gaussian(n);
  } else {
    const ComplexMatrix w = rng.haar_unitary(m);
    const ComplexMatrix v = rng.haar_unitary(n);
    ComplexMatrix scaled(m, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < m; ++r) scaled(r, j) = w(r, j) * spec.spectrum_plan[j];
    out.base = scaled * adjoint(v);
    raw = rng.gaussian(m, n);
  }

  if (spec.perturb_norm == 0.0) {
    out.delta = ComplexMatrix(m, n);
    return out;
  }
  const double raw_fro = frobenius_norm(raw);
  if (raw_fro < 1e-300)
    throw Error(ErrorCode::RankCollapse, "gen_problem: degenerate perturbation sample");
  out.delta = (spec.perturb_norm / raw_fro) * raw;
  return out;
}

namespace {

struct TrialOutcome {
  bool failed = false;
  std::string message;
  std::map<BoundId, BoundTally> tallies;
  std::size_t dominance_checks = 0;
  std::size_t dominance_violations = 0;
  std::size_t reduction_checks = 0;
  std::size_t reduction_violations = 0;
  double max_reduction_gap = 0.0;
  std::size_t esin_checks = 0;
  std::size_t esin_violations = 0;
  std::size_t gap_prediction_violations = 0;
  std::size_t block_ambiguity_events = 0;
  std::size_t continuity_events = 0;
  double max_gauge_hermiticity = 0.0;
  double min_gauge_eigenvalue = 1.0;
  std::vector<CompareRow> rows;
};

struct TrialShape {
  std::size_t trial = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  const char* kind = "";
  bool collect_rows = false;
};

void tally_report(TrialOutcome& out, const BoundReport& report) {
  BoundTally& tally = out.tallies[report.id];
  ++tally.evaluated;
  if (!report.applicable) return;
  ++tally.applicable;
  if (bound_satisfied(report)) ++tally.satisfied;
  tally.min_slack = std::min(tally.min_slack, report.slack);
  tally.min_relative_slack = std::min(tally.min_relative_slack, relative_slack(report));
}

void append_row(TrialOutcome& out, const TrialShape& shape, const std::string& name,
                const BoundReport& report) {
  if (!shape.collect_rows) return;
  CompareRow row;
  row.trial = shape.trial;
  row.kind = shape.kind;
  row.n = shape.n;
  row.m = shape.m;
  row.k = shape.k;
  row.bound = name;
  row.lhs = report.lhs;
  row.rhs = report.rhs;
  row.slack = report.slack;
  row.relative_slack = relative_slack(report);
  row.applicable = report.applicable;
  out.rows.push_back(std::move(row));
}

void record(TrialOutcome& out, const TrialShape& shape, const BoundReport& report) {
  tally_report(out, report);
  append_row(out, shape, bound_id_name(report.id), report);
}

void absorb_metadata(TrialOutcome& out, const PathMetadata& metadata) {
  out.block_ambiguity_events += metadata.block_ambiguity.size();
  out.continuity_events += metadata.continuity_flags.size();
  out.max_gauge_hermiticity = std::max(out.max_gauge_hermiticity, metadata.max_gauge_hermiticity);
  out.min_gauge_eigenvalue = std::min(out.min_gauge_eigenvalue, metadata.min_gauge_eigenvalue);
}

/// slack(combined) must not exceed slack(squared classical); the combined
/// left side accumulates the squared classical one plus nonnegative terms
/// against a bitwise-identical right side, so the check is exact.
void check_dominance(TrialOutcome& out, const BoundReport& combined, const BoundReport& squared) {
  ++out.dominance_checks;
  if (combined.slack > squared.slack) ++out.dominance_violations;
}

void check_reduction(TrialOutcome& out, const BoundReport& combined, const BoundReport& squared) {
  ++out.reduction_checks;
  const double gap =
      std::max(std::abs(combined.lhs - squared.lhs), std::abs(combined.rhs - squared.rhs));
  out.max_reduction_gap = std::max(out.max_reduction_gap, gap);
  const double scale = std::max(1.0, std::abs(squared.lhs) + std::abs(squared.rhs));
  if (!(gap <= 1e-12 * scale)) ++out.reduction_violations;
}

void check_esin(TrialOutcome& out, const ComplexMatrix& start, const ComplexMatrix& end) {
  ++out.esin_checks;
  const double dist = frobenius_norm(end - start);
  const double sin_f = sin_theta(start, end).fro;
  if (dist < sin_f - 1e-10) ++out.esin_violations;
}

std::vector<std::vector<double>> plan_blocks(const std::vector<double>& plan,
                                             const BlockPartition& partition) {
  std::vector<std::vector<double>> blocks;
  blocks.reserve(partition.count());
  std::size_t offset = 0;
  for (std::size_t j = 0; j < partition.count(); ++j) {
    blocks.emplace_back(plan.begin() + static_cast<std::ptrdiff_t>(offset),
                        plan.begin() + static_cast<std::ptrdiff_t>(offset + partition.sizes[j]));
    offset += partition.sizes[j];
  }
  return blocks;
}

BlockPartition sample_partition(Rng& rng, std::size_t n) {
  const std::size_t k = 1 + rng.uniform_index(std::min<std::size_t>(n, 4));
  BlockPartition partition;
  std::size_t remaining = n;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    const std::size_t reserve = k - 1 - j;  // at least one column per later block
    const std::size_t size = 1 + rng.uniform_index(remaining - reserve);
    partition.sizes.push_back(size);
    remaining -= size;
  }
  partition.sizes.push_back(remaining);
  return partition;
}

/// Nonincreasing values with inter-block gaps in [0.6, 1.5] and within-block
/// spreads in [0, 0.3].  Positive plans (singular values) are shifted so the
/// smallest lands in [0.4, 1.0]; Hermitian plans anchor the largest in
/// [2, 4] and may cross zero.
std::vector<double> sample_plan(Rng& rng, const BlockPartition& partition, bool positive) {
  const std::size_t n = partition.total();
  std::vector<double> plan(n, 0.0);
  std::size_t block = 0;
  std::size_t used_in_block = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const bool new_block = used_in_block == partition.sizes[block];
    const double drop = new_block ? rng.uniform(0.6, 1.5) : rng.uniform(0.0, 0.3);
    plan[i] = plan[i - 1] - drop;
    if (new_block) {
      ++block;
      used_in_block = 1;
    } else {
      ++used_in_block;
    }
  }
  const double shift =
      positive ? rng.uniform(0.4, 1.0) - plan[n - 1] : rng.uniform(2.0, 4.0) - plan[0];
  for (double& value : plan) value += shift;
  return plan;
}

/// Largest admissible ||delta||_2 for which every conditional hypothesis in
/// the evaluated bound set holds along the whole path with margin to spare.
double spectral_cap(const std::vector<std::vector<double>>& blocks, ProblemKind kind) {
  const std::vector<double> gaps0 = pairwise_block_gaps(blocks);
  double cap = kInf;
  if (kind == ProblemKind::Hermitian) {
    for (double gap : gaps0) cap = std::min(cap, gap / 2.0);
    cap = std::min(cap, gaps0.front() / 3.0);
    if (!std::isfinite(cap)) {
      // Single block: no gap hypotheses bind; any moderate scale works.
      double scale = 1.0;
      for (const auto& values : blocks)
        for (double value : values) scale = std::max(scale, std::abs(value));
      cap = 0.5 * scale;
    }
    return cap;
  }
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const double sigma0 = blocks[j].back();  // nonincreasing within the block
    cap = std::min(cap, std::min(gaps0[j] / 2.0, sigma0));
  }
  cap = std::min(cap, std::min(gaps0.front() / 3.0, blocks.front().back() / 2.0));
  return cap;
}

BoundReport squared_classical(const BoundReport& linear, double rhs) {
  BoundReport squared;
  squared.id = linear.id;
  squared.lhs = linear.lhs * linear.lhs;
  squared.rhs = rhs;
  return detail::finish(std::move(squared));
}

void run_hermitian_trial(const SuiteConfig& config, TrialShape& shape, TrialOutcome& out,
                         const GeneratedProblem& problem, const BlockPartition& partition) {
  const ComplexMatrix at = problem.base + problem.delta;
  const EigPath path =
      track_eig_path(problem.base, problem.delta, partition, config.grid_points);
  const GapProfile gaps = gap_profile_eig(path);
  absorb_metadata(out, path.metadata);

  const double delta_fro = frobenius_norm(path.delta);
  const double fro_sq = delta_fro * delta_fro;

  const BoundReport hw = hoffman_wielandt(problem.base, at);
  record(out, shape, hw);
  const BoundReport hw_sq = squared_classical(hw, fro_sq);
  append_row(out, shape, "hoffman_wielandt_squared", hw_sq);

  const ComplexMatrix& u_start = path.samples.front().basis_blocks.front();
  const ComplexMatrix& u_end = path.samples.back().basis_blocks.front();
  record(out, shape, davis_kahan(problem.base, at, u_start, u_end));
  record(out, shape, li_sun_combined(problem.base, at, u_start, u_end));

  const BoundReport combined = combined_all_blocks(path, gaps);
  record(out, shape, combined);
  check_dominance(out, combined, hw_sq);
  if (shape.k == 1) check_reduction(out, combined, hw_sq);

  const CombinedSingleReports single = combined_single_block(path, gaps, 0);
  record(out, shape, single.main);
  record(out, shape, single.sin_f);
  record(out, shape, single.sin_only);

  record(out, shape, total_bound(path));

  for (BoundReport& report : gap_lower_bound(gaps, path.delta)) {
    if (report.applicable && !bound_satisfied(report)) ++out.gap_prediction_violations;
    record(out, shape, report);
  }

  record(out, shape, mvt_check(path, gaps, 0));

  for (std::size_t j = 0; j < partition.count(); ++j)
    check_esin(out, path.samples.front().basis_blocks[j], path.samples.back().basis_blocks[j]);
}

void run_general_trial(const SuiteConfig& config, TrialShape& shape, TrialOutcome& out,
                       const GeneratedProblem& problem, const BlockPartition& partition) {
  const ComplexMatrix bt = problem.base + problem.delta;
  const SvdPath path =
      track_svd_path(problem.base, problem.delta, partition, config.grid_points);
  const SvdGapProfile gaps = gap_profile_svd(path);
  absorb_metadata(out, path.metadata);

  const double delta_fro = frobenius_norm(path.delta);
  const double fro_sq = delta_fro * delta_fro;

  const BoundReport mk = mirsky(problem.base, bt);
  record(out, shape, mk);
  const BoundReport mk_sq = squared_classical(mk, fro_sq);
  append_row(out, shape, "mirsky_squared", mk_sq);

  const BoundReport combined = combined_all_svd(path, gaps);
  record(out, shape, combined);
  check_dominance(out, combined, mk_sq);
  if (shape.k == 1 && shape.m == shape.n) check_reduction(out, combined, mk_sq);

  const SvdCombinedReports single = combined_single_svd(path, gaps, 0);
  record(out, shape, single.main);
  record(out, shape, single.sin_variant);

  for (BoundReport& report : svd_gap_lower_bound(gaps, path.delta)) {
    if (report.applicable && (!bound_satisfied(report) || !(report.rhs > 0.0)))
      ++out.gap_prediction_violations;
    record(out, shape, report);
  }

  record(out, shape, svd_mvt_check(path, gaps, 0));

  for (std::size_t j = 0; j < partition.count(); ++j) {
    check_esin(out, path.samples.front().left_blocks[j], path.samples.back().left_blocks[j]);
    check_esin(out, path.samples.front().right_blocks[j], path.samples.back().right_blocks[j]);
  }
}

TrialOutcome run_one_trial(const SuiteConfig& config, std::size_t trial) {
  TrialOutcome out;
  try {
    Rng rng(config.seed, trial);
    const std::size_t n = config.n_min + rng.uniform_index(config.n_max - config.n_min + 1);
    const std::size_t m =
        config.kind == ProblemKind::General ? n + rng.uniform_index(config.m_extra_max + 1) : n;
    const BlockPartition partition = sample_partition(rng, n);
    const std::vector<double> plan =
        sample_plan(rng, partition, config.kind == ProblemKind::General);

    ProblemSpec spec;
    spec.kind = config.kind;
    spec.n = n;
    spec.m = m;
    spec.partition = partition;
    spec.spectrum_plan = plan;
    spec.perturb_norm = 1.0;
    spec.seed = config.seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1));
    GeneratedProblem problem = gen_problem(spec);

    if (config.fixed_perturb_fro >= 0.0) {
      problem.delta = config.fixed_perturb_fro == 0.0
                          ? ComplexMatrix(problem.base.rows(), problem.base.cols())
                          : config.fixed_perturb_fro * problem.delta;
    } else if (config.enforce_conditions) {
      const double cap = spectral_cap(plan_blocks(plan, partition), config.kind);
      const double pilot = matrix_norm(problem.delta, NormKind::Spectral);
      problem.delta = (config.margin * cap / pilot) * problem.delta;
    } else {
      problem.delta = rng.uniform(0.1, 1.0) * problem.delta;
    }

    TrialShape shape;
    shape.trial = trial;
    shape.n = n;
    shape.m = m;
    shape.k = partition.count();
    shape.kind = problem_kind_name(config.kind);
    shape.collect_rows = config.collect_rows;

    if (config.kind == ProblemKind::Hermitian)
      run_hermitian_trial(config, shape, out, problem, partition);
    else
      run_general_trial(config, shape, out, problem, partition);
  } catch (const std::exception& e) {
    out.failed = true;
    out.message = "trial " + std::to_string(trial) + ": " + e.what();
  }
  return out;
}

std::size_t decide_threads(const SuiteConfig& config, std::size_t trials) {
  std::size_t threads = config.threads;
  if (threads == 0) {
    const unsigned hardware = std::thread::hardware_concurrency();
    threads = hardware == 0 ? 1 : hardware;
  }
  if (const char* env = std::getenv("MPTK_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap > 0) threads = std::min<std::size_t>(threads, cap);
  }
  return std::max<std::size_t>(1, std::min(threads, trials));
}

void merge_outcome(SuiteReport& report, TrialOutcome& outcome) {
  ++report.trials_completed;
  if (outcome.failed) {
    ++report.trial_failures;
    report.failure_messages.push_back(std::move(outcome.message));
  }
  for (const auto& [id, tally] : outcome.tallies) {
    BoundTally& dst = report.tallies[id];
    dst.evaluated += tally.evaluated;
    dst.applicable += tally.applicable;
    dst.satisfied += tally.satisfied;
    dst.min_slack = std::min(dst.min_slack, tally.min_slack);
    dst.min_relative_slack = std::min(dst.min_relative_slack, tally.min_relative_slack);
  }
  report.dominance_checks += outcome.dominance_checks;
  report.dominance_violations += outcome.dominance_violations;
  report.reduction_checks += outcome.reduction_checks;
  report.reduction_violations += outcome.reduction_violations;
  report.max_reduction_gap = std::max(report.max_reduction_gap, outcome.max_reduction_gap);
  report.esin_checks += outcome.esin_checks;
  report.esin_violations += outcome.esin_violations;
  report.gap_prediction_violations += outcome.gap_prediction_violations;
  report.block_ambiguity_events += outcome.block_ambiguity_events;
  report.continuity_events += outcome.continuity_events;
  report.max_gauge_hermiticity =
      std::max(report.max_gauge_hermiticity, outcome.max_gauge_hermiticity);
  report.min_gauge_eigenvalue =
      std::min(report.min_gauge_eigenvalue, outcome.min_gauge_eigenvalue);
  for (CompareRow& row : outcome.rows) report.rows.push_back(std::move(row));
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
  if (config.n_min < 1 || config.n_min > config.n_max)
    throw Error(ErrorCode::InvalidArgument, "run_suite: invalid size range");
  if (config.grid_points < 2)
    throw Error(ErrorCode::InvalidArgument, "run_suite: need at least two grid points");
  if (!(config.margin > 0.0) || config.margin > 1.0)
    throw Error(ErrorCode::InvalidArgument, "run_suite: margin must be in (0, 1]");

  const auto started = std::chrono::steady_clock::now();
  SuiteReport report;
  report.config = config;

  std::vector<TrialOutcome> outcomes(config.trials);
  const std::size_t threads = config.trials == 0 ? 1 : decide_threads(config, config.trials);
  if (threads <= 1) {
    for (std::size_t trial = 0; trial < config.trials; ++trial)
      outcomes[trial] = run_one_trial(config, trial);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&]() {
        for (std::size_t trial = next.fetch_add(1); trial < config.trials;
             trial = next.fetch_add(1))
          outcomes[trial] = run_one_trial(config, trial);
      });
    }
    for (std::thread& worker : workers) worker.join();
  }
  // Sequential merge in trial order keeps the report schedule-independent.
  for (TrialOutcome& outcome : outcomes) merge_outcome(report, outcome);

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

bool suite_passed(const SuiteReport& report) {
  if (report.trial_failures != 0) return false;
  for (const auto& [id, tally] : report.tallies)
    if (tally.satisfied != tally.applicable) return false;
  return report.dominance_violations == 0 && report.reduction_violations == 0 &&
         report.esin_violations == 0 && report.gap_prediction_violations == 0;
}

ScalingStudy scaling_study(const ComplexMatrix& base, const ComplexMatrix& direction,
                           const BlockPartition& partition, const std::vector<double>& norms,
                           std::size_t grid_points) {
  require_hermitian(base, "scaling_study base");
  require_hermitian(direction, "scaling_study direction");
  if (direction.rows() != base.rows())
    throw Error(ErrorCode::ShapeError, "scaling_study: direction size differs from base");
  partition.validate(base.rows());
  if (norms.empty()) throw Error(ErrorCode::InvalidArgument, "scaling_study: no norms given");
  for (double norm : norms)
    if (!std::isfinite(norm) || norm < 0.0)
      throw Error(ErrorCode::InvalidArgument, "scaling_study: norms must be finite and >= 0");
  const double direction_fro = frobenius_norm(direction);
  if (!(direction_fro > 0.0))
    throw Error(ErrorCode::InvalidArgument, "scaling_study: zero direction");

  const std::size_t k = partition.count();
  ScalingStudy study;
  study.rows.reserve(norms.size());
  for (double norm : norms) {
    const ComplexMatrix delta = norm == 0.0 ? ComplexMatrix(base.rows(), base.cols())
                                            : (norm / direction_fro) * direction;
    const EigPath path = track_eig_path(base, delta, partition, grid_points);
    const GapProfile gaps = gap_profile_eig(path);
    const DeltaTilde tilde = compute_delta_tilde(path);

    ScalingRow row;
    row.norm = norm;
    row.gap_min = gaps.minima;
    row.delta_tilde = tilde.per_block;
    row.difference.resize(k);
    row.ratio.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
      const bool both_infinite = std::isinf(gaps.minima[j]) && std::isinf(tilde.per_block[j]);
      row.difference[j] = both_infinite ? 0.0 : gaps.minima[j] - tilde.per_block[j];
      row.ratio[j] = norm > 0.0 ? row.difference[j] / norm : 0.0;
      if (!std::isinf(gaps.minima[j]) && gaps.minima[j] == 0.0) row.gap_collapsed = true;
    }
    study.rows.push_back(std::move(row));
  }

  study.slope.assign(k, 0.0);
  study.ratio_bounded.assign(k, true);
  for (std::size_t j = 0; j < k; ++j) {
    // Least-squares log-log slope of |difference| vs norm over usable rows.
    std::vector<double> log_x, log_y, ratios;
    for (const ScalingRow& row : study.rows) {
      if (row.gap_collapsed || row.norm <= 0.0) continue;
      ratios.push_back(std::abs(row.ratio[j]));
      if (std::abs(row.difference[j]) > 0.0) {
        log_x.push_back(std::log(row.norm));
        log_y.push_back(std::log(std::abs(row.difference[j])));
      }
    }
    if (log_x.size() >= 2) {
      double mean_x = 0.0, mean_y = 0.0;
      for (std::size_t i = 0; i < log_x.size(); ++i) {
        mean_x += log_x[i];
        mean_y += log_y[i];
      }
      mean_x /= static_cast<double>(log_x.size());
      mean_y /= static_cast<double>(log_y.size());
      double cov = 0.0, var = 0.0;
      for (std::size_t i = 0; i < log_x.size(); ++i) {
        cov += (log_x[i] - mean_x) * (log_y[i] - mean_y);
        var += (log_x[i] - mean_x) * (log_x[i] - mean_x);
      }
      if (var > 0.0) study.slope[j] = cov / var;
    }
    // Bounded = the ratios do not grow monotonically as the norm shrinks
    // (rows are expected in decreasing-norm order).
    if (ratios.size() >= 2) {
      bool monotone_growth = true;
      for (std::size_t i = 0; i + 1 < ratios.size(); ++i)
        if (ratios[i + 1] <= ratios[i]) monotone_growth = false;
      if (ratios.back() <= 1.5 * ratios.front()) monotone_growth = false;
      study.ratio_bounded[j] = !monotone_growth;
    }
  }
  return study;
}

Oracle2x2 oracle_2x2_eig(double a11, double a12, double a22, double d11, double d12, double d22,
                         double t) {
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "oracle_2x2_eig: bad t");
  const auto off = [&](double s) { return a12 + s * d12; };
  const auto gap = [&](double s) { return (a22 + s * d22) - (a11 + s * d11); };

  Oracle2x2 out;
  const double mean = 0.5 * ((a11 + t * d11) + (a22 + t * d22));
  const double radius = std::hypot(0.5 * gap(t), off(t));
  out.lambda_hi = mean + radius;
  out.lambda_lo = mean - radius;
  out.angle_defined = !(gap(t) == 0.0 && off(t) == 0.0);

  // Continuous branch of phi(s) = atan2(2 b(s), g(s)) from s = 0, unwrapped
  // over fixed substeps; theta = (phi(t) - phi(0)) / 2.
  constexpr int kSubsteps = 1024;
  double total = 0.0;
  double previous = std::atan2(2.0 * off(0.0), gap(0.0));
  for (int i = 1; i <= kSubsteps; ++i) {
    const double s = t * static_cast<double>(i) / kSubsteps;
    const double current = std::atan2(2.0 * off(s), gap(s));
    total += std::remainder(current - previous, 2.0 * std::numbers::pi);
    previous = current;
  }
  out.theta = 0.5 * total;
  return out;
}

}  // namespace mptk
