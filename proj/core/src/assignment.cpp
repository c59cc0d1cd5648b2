#include "mptk/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mptk/errors.hpp"

namespace mptk {

namespace {

/// Two-component cost ordered lexicographically.  Pairs under componentwise
/// addition and this order form an ordered group, so the Hungarian algorithm
/// below resolves primary-cost ties by the secondary component exactly,
/// without epsilon scaling.
struct Cost2 {
  double primary = 0.0;
  double secondary = 0.0;

  static Cost2 infinity() { return {std::numeric_limits<double>::infinity(), 0.0}; }

  Cost2 operator-(const Cost2& o) const { return {primary - o.primary, secondary - o.secondary}; }
  Cost2& operator+=(const Cost2& o) {
    primary += o.primary;
    secondary += o.secondary;
    return *this;
  }
  Cost2& operator-=(const Cost2& o) {
    primary -= o.primary;
    secondary -= o.secondary;
    return *this;
  }
  bool operator<(const Cost2& o) const {
    if (primary != o.primary) return primary < o.primary;
    return secondary < o.secondary;
  }
};

/// O(n^3) Hungarian algorithm with row/column potentials; cost is looked up
/// lazily through `cost(row, col)`.  Returns col -> row.
template <typename CostFn>
std::vector<std::size_t> solve_assignment(std::size_t n, CostFn cost) {
  const std::size_t kNone = n;
  std::vector<Cost2> u(n + 1), v(n + 1);
  std::vector<std::size_t> match(n + 1, kNone);  // column (incl. sentinel n) -> row
  std::vector<std::size_t> way(n + 1, kNone);

  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j0 = n;
    match[j0] = i;
    std::vector<Cost2> minv(n + 1, Cost2::infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      std::size_t j1 = kNone;
      Cost2 delta = Cost2::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        const Cost2 cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != kNone);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != n);
  }
  match.resize(n);
  return match;
}

std::vector<std::vector<std::size_t>> assign_impl(
    const std::vector<std::vector<double>>& prev_block_values,
    const std::vector<double>& new_values,
    const std::vector<std::vector<double>>* affinity) {
  std::size_t n = 0;
  for (const auto& block : prev_block_values) n += block.size();
  if (n != new_values.size())
    throw Error(ErrorCode::CountMismatch,
                "assign_to_blocks: " + std::to_string(n) + " previous values vs " +
                    std::to_string(new_values.size()) + " new values");
  for (std::size_t c = 0; c + 1 < new_values.size(); ++c)
    if (new_values[c] < new_values[c + 1])
      throw Error(ErrorCode::InvalidArgument, "assign_to_blocks: new values must be sorted");
  if (affinity) {
    if (affinity->size() != prev_block_values.size())
      throw Error(ErrorCode::CountMismatch, "assign_to_blocks: affinity rows vs blocks");
    for (const auto& row : *affinity)
      if (row.size() != n)
        throw Error(ErrorCode::CountMismatch, "assign_to_blocks: affinity columns vs values");
  }

  // Flatten blocks into matching slots; each slot remembers its block.
  std::vector<double> slot_value(n);
  std::vector<std::size_t> slot_block(n);
  std::size_t at = 0;
  for (std::size_t b = 0; b < prev_block_values.size(); ++b) {
    for (double value : prev_block_values[b]) {
      slot_value[at] = value;
      slot_block[at] = b;
      ++at;
    }
  }

  double scale = 0.0;
  for (double v : new_values) scale = std::max(scale, std::abs(v));
  for (double v : slot_value) scale = std::max(scale, std::abs(v));
  const double mu = 1e-8 * scale;

  // Value-only calls: new_values is nonincreasing, so ascending-value rank
  // of column c is n-1-c; the secondary cost -block*rank steers smaller
  // values into earlier blocks among primary-cost ties.  Affinity calls:
  // low overlap is charged mu per unit so that value near-ties (including
  // floating-point noise around exact crossings) resolve toward the
  // candidates each block actually overlaps.
  const auto cost = [&](std::size_t slot, std::size_t c) {
    if (affinity) {
      const double aff =
          std::clamp((*affinity)[slot_block[slot]][c], 0.0, 1.0);
      return Cost2{std::abs(new_values[c] - slot_value[slot]) + mu * (1.0 - aff), -aff};
    }
    return Cost2{std::abs(new_values[c] - slot_value[slot]),
                 -static_cast<double>(slot_block[slot]) *
                     static_cast<double>(n - 1 - c)};
  };
  const std::vector<std::size_t> match = solve_assignment(n, cost);

  std::vector<std::vector<std::size_t>> out(prev_block_values.size());
  for (std::size_t b = 0; b < out.size(); ++b) out[b].reserve(prev_block_values[b].size());
  for (std::size_t c = 0; c < n; ++c) out[slot_block[match[c]]].push_back(c);
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> assign_to_blocks(
    const std::vector<std::vector<double>>& prev_block_values,
    const std::vector<double>& new_values) {
  return assign_impl(prev_block_values, new_values, nullptr);
}

std::vector<std::vector<std::size_t>> assign_to_blocks(
    const std::vector<std::vector<double>>& prev_block_values,
    const std::vector<double>& new_values,
    const std::vector<std::vector<double>>& affinity) {
  return assign_impl(prev_block_values, new_values, &affinity);
}

}  // namespace mptk
