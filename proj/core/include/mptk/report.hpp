#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mptk/block_partition.hpp"
#include "mptk/bound_report.hpp"
#include "mptk/harness.hpp"
#include "mptk/path_tracking.hpp"

namespace mptk {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSchemaVersion = "mptk/1";

/// FNV-1a 64-bit content digest, 16 lowercase hex digits.
std::string fnv1a64_hex(const std::string& bytes);

struct InputDigest {
  std::string role;    // flag name: "a", "da", "b", "db"
  std::string path;
  std::string digest;  // fnv1a64_hex of the file bytes
};

struct GapSummary {
  std::string name;  // "delta", "rho", "rho_hat", "sigma"
  std::vector<double> at_zero;
  std::vector<double> minima;
};

struct DistanceSummary {
  std::string family;  // "basis", "sin_theta", "left", "right", "null", ...
  std::vector<double> values;
};

struct BoundSummary {
  std::size_t total = 0;
  std::size_t applicable = 0;
  std::size_t satisfied = 0;
  bool all_satisfied = true;
};

BoundSummary summarize_bounds(const std::vector<BoundReport>& bounds);

/// Everything the eig-verify/svd-verify JSON document carries.  All numeric
/// fields serialize as finite numbers or null (the +inf "unconstrained"
/// convention maps to null); there are no timestamps, so identical inputs
/// produce identical documents.
struct VerifyDocument {
  std::string command;  // "eig-verify" or "svd-verify"
  std::vector<InputDigest> inputs;
  std::vector<std::size_t> partition;
  std::size_t target_block = 1;  // 1-based
  std::size_t grid_samples = 0;
  PathMetadata metadata;
  std::vector<GapSummary> gaps;
  bool has_sigma_min = false;
  double sigma_min = 0.0;  // global path minimum singular value (svd only)
  std::vector<DistanceSummary> endpoint_distances;
  std::vector<BoundReport> bounds;
};

std::string render_verify_report(const VerifyDocument& doc);

std::string render_eig_track(const EigPath& path, const std::vector<InputDigest>& inputs,
                             bool with_bases);
std::string render_svd_track(const SvdPath& path, const std::vector<InputDigest>& inputs,
                             bool with_bases);

/// Suite JSON; wall time is optional so reports can be compared for
/// determinism.  Compare rows are not embedded (see render_compare_csv).
std::string render_suite_report(const SuiteReport& report, bool include_wall_time);

/// Long-format CSV: trial,kind,n,m,k,bound,lhs,rhs,slack,rel_slack,applicable.
std::string render_compare_csv(const std::vector<CompareRow>& rows);

}  // namespace mptk
