#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "mptk/bounds_svd.hpp"
#include "mptk/complex_matrix.hpp"
#include "mptk/errors.hpp"
#include "mptk/gap_profile.hpp"
#include "mptk/path_tracking.hpp"
#include "mptk/rng.hpp"
#include "mptk/subspace.hpp"
#include "test_helpers.hpp"

using namespace mptk;
using namespace mptk::testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Square reference: B = diag(3,1), dB = 0.1 * swap.  B(t) stays symmetric
// positive definite, so its SVD is its EVD: singular values 2 +- sqrt(1 +
// 0.01 t^2), both factor bases rotate by theta(t) = atan(0.2 t / 2) / 2.
struct SquareRef {
  ComplexMatrix b = diagonal({3, 1});
  ComplexMatrix db = real_matrix({{0, 0.1}, {0.1, 0}});
  double sq = std::sqrt(1.01);
  double theta = 0.5 * std::atan(0.1);
  double dist_sq = 2.0 - 2.0 * std::cos(0.5 * std::atan(0.1));  // per block, per factor
  double sing_shift = std::sqrt(1.01) - 1.0;                    // each singular value

  SvdPath path;
  SvdGapProfile gaps;

  SquareRef() {
    path = track_svd_path(b, db, BlockPartition{{1, 1}}, 257);
    gaps = gap_profile_svd(path);
  }
};

// Tall reference: B = [[3,0],[0,1],[0,0]], dB has a single 0.1 entry at
// (3,1).  The right factor is constant, W_1 rotates in the (e1,e3) plane by
// phi(t) with cos phi = 3 / sqrt(9 + 0.01 t^2), and the null direction
// follows with the same distance.
struct TallRef {
  ComplexMatrix b = real_matrix({{3, 0}, {0, 1}, {0, 0}});
  ComplexMatrix db = real_matrix({{0, 0}, {0, 0}, {0.1, 0}});
  double sig1 = std::sqrt(9.01);
  double sing_shift = std::sqrt(9.01) - 3.0;
  double dist_sq = 2.0 - 2.0 * (3.0 / std::sqrt(9.01));  // dW_1^2 = dNull^2

  SvdPath path;
  SvdGapProfile gaps;

  TallRef() {
    path = track_svd_path(b, db, BlockPartition{{1, 1}}, 257);
    gaps = gap_profile_svd(path);
  }
};

const SquareRef& square_ref() {
  static const SquareRef instance;
  return instance;
}

const TallRef& tall_ref() {
  static const TallRef instance;
  return instance;
}

}  // namespace

TEST_CASE("mirsky hand instances") {
  const ComplexMatrix b = diagonal({1, 2});
  const BoundReport same = mirsky(b, b);
  CHECK(same.lhs == 0.0);
  CHECK(same.rhs == 0.0);
  CHECK(bound_satisfied(same));

  const BoundReport permuted = mirsky(diagonal({1, 2}), diagonal({2, 1}));
  CHECK(permuted.lhs == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(permuted.rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  const BoundReport tight = mirsky(ComplexMatrix(2, 2), real_matrix({{0, 1}, {0, 0}}));
  CHECK(tight.lhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tight.rhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(tight.slack) <= 1e-14);
  CHECK(bound_satisfied(tight));

  CHECK_THROWS_AS(mirsky(ComplexMatrix(2, 2), ComplexMatrix(3, 2)), Error);
}

TEST_CASE("mirsky accepts wide inputs") {
  const ComplexMatrix b = real_matrix({{3, 0, 0}});
  const ComplexMatrix bt = real_matrix({{3, 0.1, 0}});
  const BoundReport report = mirsky(b, bt);
  CHECK(report.lhs == doctest::Approx(std::sqrt(9.01) - 3.0).epsilon(1e-12));
  CHECK(report.rhs == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(bound_satisfied(report));
}

TEST_CASE("combined_all_svd matches the square closed form") {
  const SquareRef& ref = square_ref();
  const BoundReport report = combined_all_svd(ref.path, ref.gaps);

  // Blocks are singletons with rho_min = rho_hat_min = 2; each factor of
  // each block moves by the same rotation distance.
  const double sv_term = 2.0 * ref.sing_shift * ref.sing_shift;
  const double expected = sv_term + 8.0 * ref.dist_sq;
  CHECK(report.lhs == doctest::Approx(expected).epsilon(1e-8));
  CHECK(report.rhs == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(report.slack > 0.0);
  CHECK(bound_satisfied(report));

  CHECK(report.components.at("block_1_rho_min") == doctest::Approx(2.0).epsilon(1e-12));
  // Square inputs: rho_hat is identically rho.
  CHECK(report.components.at("block_1_rho_hat_min") == report.components.at("block_1_rho_min"));
  CHECK(report.components.at("block_2_rho_hat_min") == report.components.at("block_2_rho_min"));
  CHECK(report.components.count("null_term") == 0);
  CHECK(report.components.at("block_1_left_distance") ==
        doctest::Approx(std::sqrt(ref.dist_sq)).epsilon(1e-9));
  CHECK(report.components.at("block_1_right_distance") ==
        doctest::Approx(std::sqrt(ref.dist_sq)).epsilon(1e-9));
}

TEST_CASE("combined_all_svd matches the tall closed form") {
  const TallRef& ref = tall_ref();
  const BoundReport report = combined_all_svd(ref.path, ref.gaps);

  // rho_hat = (2, 1), sigma_min = 1, the right factor and W_2 are constant.
  const double expected = ref.sing_shift * ref.sing_shift + 2.0 * ref.dist_sq +
                          0.5 * ref.dist_sq;
  CHECK(report.lhs == doctest::Approx(expected).epsilon(1e-8));
  CHECK(report.rhs == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(report.slack > 0.0);
  CHECK(bound_satisfied(report));

  CHECK(report.components.at("block_1_rho_hat_min") == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(report.components.at("block_2_rho_hat_min") == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(report.components.at("sigma_min") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.components.at("null_distance") ==
        doctest::Approx(std::sqrt(ref.dist_sq)).epsilon(1e-9));
  CHECK(report.components.at("block_1_right_distance") <= 1e-10);
}

TEST_CASE("combined_all_svd single square block reduces to mirsky squared") {
  Rng rng(201);
  const ComplexMatrix b = rng.gaussian(4, 4);
  const ComplexMatrix db = 0.2 * rng.gaussian(4, 4);
  const SvdPath path = track_svd_path(b, db, BlockPartition{{4}}, 33);
  const BoundReport combined = combined_all_svd(path, gap_profile_svd(path));
  const BoundReport mk = mirsky(b, b + db);

  CHECK(std::abs(combined.lhs - mk.lhs * mk.lhs) <= 1e-12);
  const double fro = frobenius_norm(db);
  CHECK(combined.rhs == fro * fro);
  CHECK(combined.condition_note == "single block: right subspace sum is empty");
}

TEST_CASE("combined_all_svd single tall block strictly dominates mirsky squared") {
  const TallRef& ref = tall_ref();
  const SvdPath path = track_svd_path(ref.b, ref.db, BlockPartition{{2}}, 65);
  const SvdGapProfile gaps = gap_profile_svd(path);
  const BoundReport combined = combined_all_svd(path, gaps);
  const BoundReport mk = mirsky(ref.b, ref.b + ref.db);

  // rho is infinite (dropped right term) but rho_hat = sigma and the null
  // term survive, so the lhs strictly exceeds the Mirsky lhs.
  CHECK(combined.condition_note == "single block: right subspace sum is empty");
  const double expected = ref.sing_shift * ref.sing_shift + 0.5 * ref.dist_sq +
                          0.5 * ref.dist_sq;
  CHECK(combined.lhs == doctest::Approx(expected).epsilon(1e-8));
  CHECK(combined.lhs > mk.lhs * mk.lhs + 1e-4);
  CHECK(combined.slack < (combined.rhs - mk.lhs * mk.lhs));
  CHECK(bound_satisfied(combined));
}

TEST_CASE("combined_single_svd matches the square closed form") {
  const SquareRef& ref = square_ref();
  const SvdCombinedReports reports = combined_single_svd(ref.path, ref.gaps, 0);

  CHECK(reports.main.applicable);
  const double x = 0.1;
  const double shrink = 1.0 - x / 2.0;
  const double weight = 2.0 - x;
  const double expected_main = 2.0 * shrink * shrink * ref.sing_shift * ref.sing_shift +
                               weight * weight * 2.0 * ref.dist_sq;
  CHECK(reports.main.lhs == doctest::Approx(expected_main).epsilon(1e-8));
  // rhs = ||dB v1||^2 + ||w1^H dB||^2 = 0.01 + 0.01.
  CHECK(reports.main.rhs == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(reports.main.slack > 0.0);
  CHECK(bound_satisfied(reports.main));
  CHECK(reports.main.components.count("amplification") == 0);

  const double sin_sq = std::sin(ref.theta) * std::sin(ref.theta);
  const double expected_sin = 2.0 * shrink * shrink * ref.sing_shift * ref.sing_shift +
                              weight * weight * 2.0 * sin_sq;
  CHECK(reports.sin_variant.lhs == doctest::Approx(expected_sin).epsilon(1e-8));
  CHECK(bound_satisfied(reports.sin_variant));

  // sin-theta distances never exceed the basis distances.
  CHECK(reports.main.components.at("sin_left_fro") <=
        reports.main.components.at("left_distance") + 1e-10);
  CHECK(reports.main.components.at("sin_right_fro") <=
        reports.main.components.at("right_distance") + 1e-10);
}

TEST_CASE("combined_single_svd matches the tall closed form") {
  const TallRef& ref = tall_ref();
  const SvdCombinedReports reports = combined_single_svd(ref.path, ref.gaps, 0);

  CHECK(reports.main.applicable);
  const double amplification = (2.0 / 1.9) * (2.0 / 1.9);
  CHECK(reports.main.components.at("amplification") ==
        doctest::Approx(amplification).epsilon(1e-10));

  // W_1^H dB vanishes at t = 0, so the residual rhs is just ||dB v1||^2.
  const double expected_lhs =
      2.0 * ref.sing_shift * ref.sing_shift + 4.0 * ref.dist_sq;
  CHECK(reports.main.lhs == doctest::Approx(expected_lhs).epsilon(1e-8));
  CHECK(reports.main.rhs == doctest::Approx(amplification * 0.01).epsilon(1e-10));
  CHECK(reports.main.slack > 0.0);
  CHECK(bound_satisfied(reports.main));
  CHECK(bound_satisfied(reports.sin_variant));
}

TEST_CASE("combined_single_svd square hypothesis gate") {
  const ComplexMatrix b = diagonal({1, 0.95});
  const ComplexMatrix db = real_matrix({{0, 0.1}, {0.1, 0}});
  const SvdPath path = track_svd_path(b, db, BlockPartition{{1, 1}}, 65);
  const SvdGapProfile gaps = gap_profile_svd(path);
  REQUIRE(gaps.rho.minima[0] < 0.1);

  const SvdCombinedReports reports = combined_single_svd(path, gaps, 0);
  CHECK_FALSE(reports.main.applicable);
  CHECK(reports.main.condition_note == "hypothesis ||delta||_2 < rho minimum fails");
  CHECK(bound_satisfied(reports.main));  // vacuously
}

TEST_CASE("combined_single_svd tall hypothesis gate") {
  const ComplexMatrix b = real_matrix({{0.05, 0}, {0, 1}, {0, 0}});
  const ComplexMatrix db = real_matrix({{0, 0}, {0, 0}, {0.1, 0}});
  const SvdPath path = track_svd_path(b, db, BlockPartition{{1, 1}}, 65);
  const SvdGapProfile gaps = gap_profile_svd(path);
  REQUIRE(gaps.rho_hat.minima[1] < 0.1);  // sigma_2(0) = 0.05

  const SvdCombinedReports reports = combined_single_svd(path, gaps, 1);
  CHECK_FALSE(reports.main.applicable);
  CHECK(reports.main.condition_note == "hypothesis ||delta||_2 < rho_hat minimum fails");
  CHECK(bound_satisfied(reports.main));
}

TEST_CASE("combined_single_svd with zero perturbation") {
  const ComplexMatrix b = diagonal({3, 1});
  const SvdPath path = track_svd_path(b, ComplexMatrix(2, 2), BlockPartition{{1, 1}}, 9);
  const SvdCombinedReports reports = combined_single_svd(path, gap_profile_svd(path), 0);
  CHECK(reports.main.applicable);  // 0 < 2
  CHECK(reports.main.lhs <= 1e-20);
  CHECK(reports.main.rhs == 0.0);
  CHECK(bound_satisfied(reports.main));
}

TEST_CASE("svd_gap_lower_bound square and tall predictions") {
  const SquareRef& square = square_ref();
  const auto square_reports = svd_gap_lower_bound(square.gaps, square.db);
  REQUIRE(square_reports.size() == 2);
  for (const BoundReport& report : square_reports) {
    CHECK(report.applicable);  // 2 * 0.1 < 2
    CHECK(report.lhs == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(report.rhs == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(bound_satisfied(report));
  }

  const TallRef& tall = tall_ref();
  const auto tall_reports = svd_gap_lower_bound(tall.gaps, tall.db);
  REQUIRE(tall_reports.size() == 2);
  // Block 1: min(rho(0) - 2x, sigma(0) - x) = min(1.8, 2.9) = 1.8 <= 2.
  CHECK(tall_reports[0].applicable);
  CHECK(tall_reports[0].lhs == doctest::Approx(1.8).epsilon(1e-10));
  CHECK(tall_reports[0].rhs == doctest::Approx(2.0).epsilon(1e-10));
  // Block 2: min(1.8, 0.9) = 0.9 <= rho_hat_min = 1.
  CHECK(tall_reports[1].applicable);
  CHECK(tall_reports[1].lhs == doctest::Approx(0.9).epsilon(1e-10));
  CHECK(tall_reports[1].rhs == doctest::Approx(1.0).epsilon(1e-10));
  for (const BoundReport& report : tall_reports) CHECK(bound_satisfied(report));
}

TEST_CASE("svd_gap_lower_bound gates and single-block conventions") {
  // Square gate: 2x = 0.2 >= rho(0) = 0.05.
  const ComplexMatrix b = diagonal({1, 0.95});
  const ComplexMatrix db = real_matrix({{0, 0.1}, {0.1, 0}});
  const SvdPath path = track_svd_path(b, db, BlockPartition{{1, 1}}, 33);
  const auto reports = svd_gap_lower_bound(gap_profile_svd(path), db);
  CHECK_FALSE(reports[0].applicable);
  CHECK(reports[0].condition_note == "condition 2 ||delta||_2 < rho(0) fails");
  CHECK(bound_satisfied(reports[0]));

  // Square single block: unconstrained.
  Rng rng(211);
  const ComplexMatrix c = rng.gaussian(3, 3);
  const ComplexMatrix dc = 0.1 * rng.gaussian(3, 3);
  const SvdPath single = track_svd_path(c, dc, BlockPartition{{3}}, 17);
  const auto single_reports = svd_gap_lower_bound(gap_profile_svd(single), dc);
  CHECK(single_reports[0].lhs == kInf);
  CHECK(single_reports[0].rhs == kInf);
  CHECK(single_reports[0].slack == 0.0);
  CHECK(single_reports[0].condition_note == "single block: gap unconstrained");
  CHECK(bound_satisfied(single_reports[0]));

  // Tall single block: the sigma branch still constrains rho_hat.
  const TallRef& tall = tall_ref();
  const SvdPath tall_single = track_svd_path(tall.b, tall.db, BlockPartition{{2}}, 33);
  const auto tall_reports = svd_gap_lower_bound(gap_profile_svd(tall_single), tall.db);
  CHECK(tall_reports[0].applicable);
  CHECK(tall_reports[0].lhs == doctest::Approx(0.9).epsilon(1e-10));
  CHECK(tall_reports[0].rhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(bound_satisfied(tall_reports[0]));
}

TEST_CASE("svd_mvt_check commuting diagonal family is exactly tight") {
  const ComplexMatrix b = diagonal({3, 1});
  const ComplexMatrix db = diagonal({0.5, 0});
  const SvdPath path = track_svd_path(b, db, BlockPartition{{1, 1}}, 17);
  const BoundReport report = svd_mvt_check(path, gap_profile_svd(path), 0);

  // lhs = 2 * 0.25, rhs = ||db e1||^2 + ||e1^T db||^2 = 0.5 at every t.
  CHECK(report.lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.rhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(report.slack) <= 1e-14);
  CHECK(bound_satisfied(report));
}

TEST_CASE("svd_mvt_check holds on both reference instances") {
  const SquareRef& square = square_ref();
  const BoundReport square_report = svd_mvt_check(square.path, square.gaps, 0);
  CHECK(square_report.slack > 0.0);
  CHECK(bound_satisfied(square_report));
  CHECK(square_report.rhs == doctest::Approx(0.02).epsilon(1e-9));

  const TallRef& tall = tall_ref();
  const BoundReport tall_report = svd_mvt_check(tall.path, tall.gaps, 0);
  CHECK(tall_report.slack > 0.0);
  CHECK(bound_satisfied(tall_report));
  // max_t residual: ||dB v1||^2 = 0.01 plus ||w1(t)^H dB||^2 = 0.01 sin^2(phi(1)).
  const double sin_phi = 0.1 / tall.sig1;
  CHECK(tall_report.rhs == doctest::Approx(0.01 + 0.01 * sin_phi * sin_phi).epsilon(1e-9));
}

TEST_CASE("svd dominance over mirsky squared across random square trials") {
  Rng rng(223);
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 2);
    const ComplexMatrix b = rng.gaussian(n, n);
    const ComplexMatrix db = 0.1 * rng.gaussian(n, n);
    const SvdPath path = track_svd_path(b, db, BlockPartition{{1, n - 1}}, 33);
    const BoundReport combined = combined_all_svd(path, gap_profile_svd(path));
    const BoundReport mk = mirsky(b, b + db);

    const double fro = frobenius_norm(db);
    CHECK(combined.rhs == fro * fro);
    CHECK(combined.lhs >= mk.lhs * mk.lhs - 1e-12);
    CHECK(combined.slack <= (fro * fro - mk.lhs * mk.lhs) + 1e-12);
  }
}
