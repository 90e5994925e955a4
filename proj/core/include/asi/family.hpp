#pragma once

#include <string>

#include "asi/drop.hpp"
#include "asi/hyperplane.hpp"

namespace asi {

enum class OperatorFamily { Art, Drop };

std::string to_string(OperatorFamily f);
OperatorFamily family_from_string(const std::string& s);

/// Everything a run needs for one operator family on one system. For Art the
/// operators are the row projections (m = rows); for Drop they are the block
/// updates (m = block count) and the blocks stay available for audits.
struct SolverSetup {
    std::vector<OperatorPtr> ops;
    DropFamily drop;           // populated for the Drop family
    BlockPartition partition;  // populated for the Drop family
};

SolverSetup make_solver_setup(OperatorFamily family, const SparseMatrix& a,
                              std::span<const double> b, std::size_t block_count = 1,
                              BlockStrategy strategy = BlockStrategy::Contiguous,
                              bool global_col_counts = false);

} // namespace asi
