#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asi/error.hpp"

namespace asi {

enum class BlockStrategy { Contiguous, Strided, Overlapping, User };

std::string to_string(BlockStrategy s);

/// Covering family of row-index blocks B_0,...,B_{r-1} over {0,...,m-1}.
/// Blocks may overlap; every row belongs to at least one block.
struct BlockPartition {
    std::size_t row_count = 0;
    BlockStrategy strategy = BlockStrategy::Contiguous;
    std::vector<std::vector<std::size_t>> blocks;

    std::size_t block_count() const { return blocks.size(); }

    /// Throws unless blocks are nonempty, in range, and jointly cover all rows.
    void validate() const;
};

/// Contiguous: r nearly equal runs (sizes differ by at most one).
/// Strided: block t holds rows t, t+r, t+2r, ...
/// Overlapping: wrapping windows of size ceil(m/r)+overlap starting every
/// ceil(m/r) rows.
BlockPartition build_blocks(std::size_t row_count, std::size_t block_count,
                            BlockStrategy strategy, std::size_t overlap = 0);

BlockPartition user_blocks(std::size_t row_count,
                           std::vector<std::vector<std::size_t>> blocks);

} // namespace asi
