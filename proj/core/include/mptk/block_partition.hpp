#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "mptk/errors.hpp"

namespace mptk {

/// Ordered block sizes (r_1 .. r_k).  Block 1 holds the largest eigen- or
/// singular values at t = 0, formed by consecutive runs of the sorted list.
struct BlockPartition {
  std::vector<std::size_t> sizes;

  std::size_t count() const { return sizes.size(); }
  std::size_t total() const {
    return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  }
  std::size_t offset(std::size_t j) const {
    std::size_t at = 0;
    for (std::size_t i = 0; i < j; ++i) at += sizes[i];
    return at;
  }

  void validate(std::size_t n) const {
    if (sizes.empty()) throw Error(ErrorCode::InvalidArgument, "partition has no blocks");
    for (std::size_t r : sizes)
      if (r == 0) throw Error(ErrorCode::InvalidArgument, "partition blocks must be nonempty");
    if (total() != n)
      throw Error(ErrorCode::CountMismatch, "partition sums to " + std::to_string(total()) +
                                                ", expected " + std::to_string(n));
  }
};

}  // namespace mptk
