#pragma once

#include <cstddef>
#include <vector>

#include "asi/error.hpp"

namespace asi {

/// Assignment of the m operators to w worker nodes. Each node walks its own
/// subcollection cyclically; the union of subcollections must cover all
/// operators so that the merged application stream stays almost cyclic.
struct NodePool {
    std::vector<std::vector<std::size_t>> assignment;  // one subcollection per node

    std::size_t node_count() const { return assignment.size(); }

    /// Node ell takes operators ell, ell+w, ell+2w, ...
    static NodePool round_robin(std::size_t m, std::size_t w);

    void validate(std::size_t m) const;

    /// Window length that guarantees full coverage when nodes are served in
    /// round-robin order: w * (largest subcollection).
    std::size_t merge_bound() const;
};

} // namespace asi
