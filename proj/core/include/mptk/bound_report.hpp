#pragma once

#include <map>
#include <string>

namespace mptk {

/// Which inequality a report instantiates.
enum class BoundId {
  HoffmanWielandt,        // classical eigenvalue bound
  DavisKahan,             // classical sin-theta bound
  LiSunCombined,          // classical combined eigenvalue + subspace bound
  CombinedAll,            // all-blocks combined bound, gap-minimum weights
  CombinedSingle,         // single-block combined bound, block-local rhs
  CombinedSingleSin,      // ... with sin-theta in place of the basis distance
  CombinedSingleSinOnly,  // pure sin-theta consequence of the above
  TotalSpectral,          // all-blocks bound with corrected spectral weights
  GapLower,               // predicted vs tracked gap minimum
  MeanValue,              // mean-value form: max over the grid on the rhs
  Mirsky,                 // classical singular value bound
  SvdCombinedAll,
  SvdCombinedSingle,
  SvdCombinedSingleSin,
  SvdGapLower,
  SvdMeanValue,
};

const char* bound_id_name(BoundId id);

/// One evaluated inequality lhs <= rhs.  `applicable` is false when a stated
/// hypothesis fails (the numbers are still reported for inspection).
/// `components` carries the named intermediate quantities that build lhs/rhs.
struct BoundReport {
  BoundId id = BoundId::HoffmanWielandt;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool applicable = true;
  std::string condition_note;
  std::map<std::string, double> components;
};

/// slack / rhs, or the absolute slack when |rhs| < 1e-12.
double relative_slack(const BoundReport& report);

/// Inequality holds within tolerance: relative slack >= -1e-8 for bound
/// inequalities; gap predictions (GapLower, SvdGapLower) use an absolute
/// -1e-9.  Non-applicable reports are vacuously satisfied.
bool bound_satisfied(const BoundReport& report);

}  // namespace mptk
