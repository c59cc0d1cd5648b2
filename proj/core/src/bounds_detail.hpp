#pragma once

// Internal helpers shared by the eigenvalue- and singular-value-side bound
// evaluators.  Definitions live in bounds_eig.cpp.

#include <vector>

#include "mptk/bound_report.hpp"

namespace mptk::detail {

/// sqrt(sum (a_i - b_i)^2); throws RankMismatch when the lengths differ.
double l2_diff(const std::vector<double>& a, const std::vector<double>& b, const char* what);

/// Concatenates the per-block value lists and sorts nonincreasing.
std::vector<double> pooled_values(const std::vector<std::vector<double>>& blocks);

/// Fills in slack = rhs - lhs, treating same-signed infinities as slack 0.
BoundReport finish(BoundReport report);

}  // namespace mptk::detail
