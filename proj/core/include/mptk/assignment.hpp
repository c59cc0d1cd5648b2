#pragma once

#include <cstddef>
#include <vector>

namespace mptk {

/// Distributes sorted new values over the existing blocks, keeping block
/// cardinalities fixed and minimizing the total |new - matched previous|
/// movement (min-cost bipartite matching).  Exact cost ties are broken by
/// assigning smaller new values to earlier blocks.
///
/// prev_block_values: one sorted (nonincreasing) vector per block.
/// new_values: sorted nonincreasing, length equal to the total block size.
/// Returns one ascending index list into new_values per block.
std::vector<std::vector<std::size_t>> assign_to_blocks(
    const std::vector<std::vector<double>>& prev_block_values,
    const std::vector<double>& new_values);

/// As above, with near-tie steering by affinity[block][c] in [0, 1] (e.g.
/// squared subspace overlap of candidate c with the block's previous basis).
/// Value movement is regularized by 1e-8 * scale * (1 - affinity), so value
/// differences below that resolve toward the candidates the block overlaps
/// most — keeping block identity vector-continuous through exact crossings —
/// while larger value differences behave exactly like the overload above.
std::vector<std::vector<std::size_t>> assign_to_blocks(
    const std::vector<std::vector<double>>& prev_block_values,
    const std::vector<double>& new_values,
    const std::vector<std::vector<double>>& affinity);

}  // namespace mptk
