#include "asi/blocks.hpp"

#include <algorithm>

namespace asi {

std::string to_string(BlockStrategy s) {
    switch (s) {
        case BlockStrategy::Contiguous: return "contiguous";
        case BlockStrategy::Strided: return "strided";
        case BlockStrategy::Overlapping: return "overlapping";
        case BlockStrategy::User: return "user";
    }
    return "?";
}

void BlockPartition::validate() const {
    detail::require_param(!blocks.empty(), "partition: no blocks");
    std::vector<char> covered(row_count, 0);
    for (const auto& block : blocks) {
        detail::require_param(!block.empty(), "partition: empty block");
        for (std::size_t i : block) {
            detail::require_param(i < row_count, "partition: row index out of range");
            covered[i] = 1;
        }
    }
    for (std::size_t i = 0; i < row_count; ++i)
        detail::require_param(covered[i] != 0, "partition: rows not covered");
}

BlockPartition build_blocks(std::size_t row_count, std::size_t block_count,
                            BlockStrategy strategy, std::size_t overlap) {
    detail::require_param(row_count >= 1, "build_blocks: need at least one row");
    detail::require_param(block_count >= 1 && block_count <= row_count,
                          "build_blocks: block count must lie in [1, row_count]");

    BlockPartition p;
    p.row_count = row_count;
    p.strategy = strategy;
    p.blocks.resize(block_count);

    switch (strategy) {
        case BlockStrategy::Contiguous: {
            // First (row_count % block_count) blocks get the extra row.
            const std::size_t base = row_count / block_count;
            const std::size_t extra = row_count % block_count;
            std::size_t next = 0;
            for (std::size_t t = 0; t < block_count; ++t) {
                const std::size_t len = base + (t < extra ? 1 : 0);
                for (std::size_t i = 0; i < len; ++i) p.blocks[t].push_back(next++);
            }
            break;
        }
        case BlockStrategy::Strided: {
            for (std::size_t i = 0; i < row_count; ++i) p.blocks[i % block_count].push_back(i);
            break;
        }
        case BlockStrategy::Overlapping: {
            const std::size_t stride = (row_count + block_count - 1) / block_count;
            const std::size_t len = std::min(stride + overlap, row_count);
            for (std::size_t t = 0; t < block_count; ++t) {
                const std::size_t start = t * stride;
                for (std::size_t i = 0; i < len; ++i)
                    p.blocks[t].push_back((start + i) % row_count);
            }
            break;
        }
        case BlockStrategy::User:
            throw InvalidParameter("build_blocks: user strategy requires explicit blocks");
    }
    p.validate();
    return p;
}

BlockPartition user_blocks(std::size_t row_count,
                           std::vector<std::vector<std::size_t>> blocks) {
    BlockPartition p;
    p.row_count = row_count;
    p.strategy = BlockStrategy::User;
    p.blocks = std::move(blocks);
    p.validate();
    return p;
}

} // namespace asi
