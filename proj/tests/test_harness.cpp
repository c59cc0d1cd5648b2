#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <vector>

#include "mptk/bounds_eig.hpp"
#include "mptk/decompositions.hpp"
#include "mptk/errors.hpp"
#include "mptk/gap_profile.hpp"
#include "mptk/harness.hpp"
#include "mptk/path_tracking.hpp"
#include "mptk/subspace.hpp"
#include "test_helpers.hpp"

using namespace mptk;
using namespace mptk::testing;

namespace {

ProblemSpec hermitian_spec() {
  ProblemSpec spec;
  spec.kind = ProblemKind::Hermitian;
  spec.n = 3;
  spec.partition = BlockPartition{{1, 2}};
  spec.spectrum_plan = {4, 2, 1};
  spec.perturb_norm = 0.3;
  spec.seed = 42;
  return spec;
}

bool tallies_equal(const BoundTally& a, const BoundTally& b) {
  return a.evaluated == b.evaluated && a.applicable == b.applicable &&
         a.satisfied == b.satisfied && a.min_slack == b.min_slack &&
         a.min_relative_slack == b.min_relative_slack;
}

bool rows_equal(const CompareRow& a, const CompareRow& b) {
  return a.trial == b.trial && a.kind == b.kind && a.n == b.n && a.m == b.m && a.k == b.k &&
         a.bound == b.bound && a.lhs == b.lhs && a.rhs == b.rhs && a.slack == b.slack &&
         a.relative_slack == b.relative_slack && a.applicable == b.applicable;
}

}  // namespace

TEST_CASE("gen_problem is deterministic and matches its plan") {
  const ProblemSpec spec = hermitian_spec();
  const GeneratedProblem first = gen_problem(spec);
  const GeneratedProblem second = gen_problem(spec);
  CHECK(bit_identical(first.base, second.base));
  CHECK(bit_identical(first.delta, second.delta));

  const SpectralDecomposition eig = eigh_sorted(first.base);
  REQUIRE(eig.eigenvalues.size() == 3);
  CHECK(eig.eigenvalues[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_NOTHROW(require_hermitian(first.delta, "generated delta"));
  CHECK(frobenius_norm(first.delta) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("gen_problem general kind matches its singular plan") {
  ProblemSpec spec;
  spec.kind = ProblemKind::General;
  spec.n = 2;
  spec.m = 4;
  spec.partition = BlockPartition{{1, 1}};
  spec.spectrum_plan = {3, 1};
  spec.perturb_norm = 0.2;
  spec.seed = 7;
  const GeneratedProblem problem = gen_problem(spec);

  CHECK(problem.base.rows() == 4);
  CHECK(problem.base.cols() == 2);
  const SingularDecomposition svd = svd_sorted(problem.base);
  CHECK(svd.singulars[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(svd.singulars[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(frobenius_norm(problem.delta) == doctest::Approx(0.2).epsilon(1e-12));

  ProblemSpec zero = spec;
  zero.perturb_norm = 0.0;
  CHECK(max_abs(gen_problem(zero).delta) == 0.0);
}

TEST_CASE("gen_problem validates its inputs") {
  ProblemSpec spec = hermitian_spec();

  spec.partition = BlockPartition{{1, 1}};  // sums to 2, n = 3
  CHECK_THROWS_AS(gen_problem(spec), Error);

  spec = hermitian_spec();
  spec.spectrum_plan = {1, 2, 4};  // increasing
  CHECK_THROWS_AS(gen_problem(spec), Error);

  spec = hermitian_spec();
  spec.m = 4;  // hermitian problems are square
  CHECK_THROWS_AS(gen_problem(spec), Error);

  ProblemSpec general;
  general.kind = ProblemKind::General;
  general.n = 2;
  general.m = 1;  // wide
  general.partition = BlockPartition{{2}};
  general.spectrum_plan = {3, 1};
  CHECK_THROWS_AS(gen_problem(general), Error);

  general.m = 2;
  general.spectrum_plan = {3, -1};  // negative singular value
  CHECK_THROWS_AS(gen_problem(general), Error);
}

TEST_CASE("oracle_2x2_eig closed forms") {
  // Reference instance A = diag(0, 3), dA = 0.1 * swap.
  const Oracle2x2 at_one = oracle_2x2_eig(0, 0, 3, 0, 0.1, 0, 1.0);
  CHECK(at_one.lambda_hi == doctest::Approx(0.5 * (3.0 + std::sqrt(9.04))).epsilon(1e-12));
  CHECK(at_one.lambda_lo == doctest::Approx(0.5 * (3.0 - std::sqrt(9.04))).epsilon(1e-12));
  CHECK(std::abs(at_one.theta) ==
        doctest::Approx(0.5 * std::atan2(0.2, 3.0)).epsilon(1e-12));
  CHECK(at_one.angle_defined);

  const Oracle2x2 at_half = oracle_2x2_eig(0, 0, 3, 0, 0.1, 0, 0.5);
  CHECK(at_half.lambda_hi == doctest::Approx(0.5 * (3.0 + std::sqrt(9.01))).epsilon(1e-12));

  // Constant diagonal matrix: no rotation at all.
  const Oracle2x2 constant = oracle_2x2_eig(2, 0, -1, 0, 0, 0, 1.0);
  CHECK(constant.lambda_hi == 2.0);
  CHECK(constant.lambda_lo == -1.0);
  CHECK(constant.theta == 0.0);

  // Pure off-diagonal growth: eigenvalues +-t, angle pi/4.
  const Oracle2x2 swap = oracle_2x2_eig(0, 0, 0, 0, 1, 0, 1.0);
  CHECK(swap.lambda_hi == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(swap.lambda_lo == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(swap.theta) == doctest::Approx(0.25 * std::acos(-1.0)).epsilon(1e-9));
  CHECK(swap.angle_defined);

  // Identically zero family: the angle is undefined.
  const Oracle2x2 degenerate = oracle_2x2_eig(0, 0, 0, 0, 0, 0, 0.5);
  CHECK_FALSE(degenerate.angle_defined);
}

TEST_CASE("oracle_2x2_eig agrees with the tracked path") {
  const ComplexMatrix a = diagonal({0, 3});
  const ComplexMatrix da = real_matrix({{0, 0.1}, {0.1, 0}});
  const EigPath path = track_eig_path(a, da, BlockPartition{{1, 1}}, 65);

  for (const EigPathSample& sample : path.samples) {
    const Oracle2x2 oracle = oracle_2x2_eig(0, 0, 3, 0, 0.1, 0, sample.t);
    CHECK(std::abs(sample.block_eigs[0][0] - oracle.lambda_hi) <= 1e-10);
    CHECK(std::abs(sample.block_eigs[1][0] - oracle.lambda_lo) <= 1e-10);
  }

  const Oracle2x2 end = oracle_2x2_eig(0, 0, 3, 0, 0.1, 0, 1.0);
  const double tracked_dist = frobenius_norm(path.samples.back().basis_blocks[0] -
                                             path.samples.front().basis_blocks[0]);
  const double oracle_dist = 2.0 * std::abs(std::sin(0.5 * end.theta));
  CHECK(std::abs(tracked_dist - oracle_dist) <= 1e-8);
}

TEST_CASE("scaling_study on the off-diagonal direction is quadratic and bounded") {
  const ComplexMatrix base = diagonal({0, 3});
  const ComplexMatrix direction = real_matrix({{0, 1}, {1, 0}});
  const std::vector<double> norms = {1e-1, 1e-2, 1e-3, 1e-4};
  const ScalingStudy study =
      scaling_study(base, direction, BlockPartition{{1, 1}}, norms, 65);

  REQUIRE(study.rows.size() == 4);
  for (const ScalingRow& row : study.rows) {
    CHECK_FALSE(row.gap_collapsed);
    CHECK(row.gap_min[0] == doctest::Approx(3.0).epsilon(1e-12));
  }
  // |difference| ~ norm^2 / 6: slope near 2, ratios shrink with the norm.
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(study.ratio_bounded[j]);
    CHECK(study.slope[j] == doctest::Approx(2.0).epsilon(0.05));
    CHECK(std::abs(study.rows.back().ratio[j]) < std::abs(study.rows.front().ratio[j]) + 1e-12);
  }
}

TEST_CASE("scaling_study on a commuting diagonal direction has bounded ratio") {
  const ComplexMatrix base = diagonal({4, 1});
  const ComplexMatrix direction = diagonal({1, -1});
  const std::vector<double> norms = {1e-1, 1e-2, 1e-3};
  const ScalingStudy study =
      scaling_study(base, direction, BlockPartition{{1, 1}}, norms, 33);

  // difference = 3 - sqrt(9 + 6 s) with s = norm / sqrt(2): ratio -> -1/sqrt(2).
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(study.ratio_bounded[j]);
    CHECK(std::abs(study.rows.back().ratio[j]) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.05));
    CHECK(std::abs(study.rows.back().ratio[j]) < 3.0);
  }
}

TEST_CASE("scaling_study with zero norms reports zero ratios") {
  const ComplexMatrix base = diagonal({0, 3});
  const ComplexMatrix direction = real_matrix({{0, 1}, {1, 0}});
  const ScalingStudy study =
      scaling_study(base, direction, BlockPartition{{1, 1}}, {0.0, 0.0}, 17);
  for (const ScalingRow& row : study.rows) {
    CHECK(row.norm == 0.0);
    for (double d : row.difference) CHECK(d == 0.0);
    for (double r : row.ratio) CHECK(r == 0.0);
  }
}

TEST_CASE("run_suite with a zero perturbation passes") {
  SuiteConfig config;
  config.kind = ProblemKind::Hermitian;
  config.trials = 1;
  config.seed = 5;
  config.n_min = 4;
  config.n_max = 4;
  config.grid_points = 33;
  config.fixed_perturb_fro = 0.0;
  const SuiteReport report = run_suite(config);
  CHECK(report.trials_completed == 1);
  CHECK(report.trial_failures == 0);
  CHECK(suite_passed(report));
}

TEST_CASE("run_suite is deterministic") {
  SuiteConfig config;
  config.kind = ProblemKind::Hermitian;
  config.trials = 10;
  config.seed = 11;
  config.n_min = 2;
  config.n_max = 5;
  config.grid_points = 33;
  config.collect_rows = true;

  const SuiteReport first = run_suite(config);
  const SuiteReport second = run_suite(config);

  CHECK(first.trials_completed == second.trials_completed);
  CHECK(first.trial_failures == second.trial_failures);
  REQUIRE(first.tallies.size() == second.tallies.size());
  for (const auto& [id, tally] : first.tallies) {
    REQUIRE(second.tallies.count(id) == 1);
    CHECK(tallies_equal(tally, second.tallies.at(id)));
  }
  CHECK(first.dominance_checks == second.dominance_checks);
  CHECK(first.dominance_violations == second.dominance_violations);
  CHECK(first.reduction_checks == second.reduction_checks);
  CHECK(first.reduction_violations == second.reduction_violations);
  CHECK(first.max_reduction_gap == second.max_reduction_gap);
  CHECK(first.esin_checks == second.esin_checks);
  CHECK(first.esin_violations == second.esin_violations);
  CHECK(first.gap_prediction_violations == second.gap_prediction_violations);
  CHECK(first.max_gauge_hermiticity == second.max_gauge_hermiticity);
  CHECK(first.min_gauge_eigenvalue == second.min_gauge_eigenvalue);

  REQUIRE(first.rows.size() == second.rows.size());
  CHECK(first.rows.size() > 0);
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    CHECK(rows_equal(first.rows[i], second.rows[i]));
  }
}

TEST_CASE("run_suite passes short enforced suites of both kinds") {
  SuiteConfig config;
  config.trials = 10;
  config.seed = 3;
  config.grid_points = 65;

  config.kind = ProblemKind::Hermitian;
  const SuiteReport hermitian = run_suite(config);
  CHECK(hermitian.trials_completed == 10);
  CHECK(hermitian.trial_failures == 0);
  CHECK(suite_passed(hermitian));
  CHECK(hermitian.dominance_checks == 10);
  CHECK(hermitian.dominance_violations == 0);
  CHECK(hermitian.max_gauge_hermiticity <= 1e-8);
  CHECK(hermitian.min_gauge_eigenvalue >= -1e-8);

  config.kind = ProblemKind::General;
  const SuiteReport general = run_suite(config);
  CHECK(general.trials_completed == 10);
  CHECK(general.trial_failures == 0);
  CHECK(suite_passed(general));
  CHECK(general.dominance_checks == 10);
  CHECK(general.dominance_violations == 0);

  // The enforced regime keeps the conditional bounds non-vacuous.
  CHECK(hermitian.tallies.at(BoundId::CombinedSingle).applicable == 10);
  CHECK(general.tallies.at(BoundId::SvdCombinedSingle).applicable == 10);
}

TEST_CASE("run_suite rejects bad configurations") {
  SuiteConfig config;
  config.n_min = 5;
  config.n_max = 3;
  CHECK_THROWS_AS(run_suite(config), Error);

  SuiteConfig grid;
  grid.grid_points = 1;
  CHECK_THROWS_AS(run_suite(grid), Error);

  SuiteConfig margin;
  margin.margin = 0.0;
  CHECK_THROWS_AS(run_suite(margin), Error);
}
