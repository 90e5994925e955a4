#include "asi/pool.hpp"

#include <algorithm>

namespace asi {

NodePool NodePool::round_robin(std::size_t m, std::size_t w) {
    detail::require_param(w >= 1, "node pool: need at least one node");
    detail::require_param(w <= m, "node pool: more nodes than operators");
    NodePool pool;
    pool.assignment.resize(w);
    for (std::size_t i = 0; i < m; ++i) pool.assignment[i % w].push_back(i);
    return pool;
}

void NodePool::validate(std::size_t m) const {
    detail::require_param(!assignment.empty(), "node pool: no nodes");
    detail::require_param(assignment.size() <= m, "node pool: more nodes than operators");
    std::vector<char> covered(m, 0);
    for (const auto& sub : assignment) {
        detail::require_param(!sub.empty(), "node pool: idle node");
        for (std::size_t i : sub) {
            detail::require_param(i < m, "node pool: operator index out of range");
            covered[i] = 1;
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        detail::require_param(covered[i] != 0, "node pool: operators not covered");
}

std::size_t NodePool::merge_bound() const {
    std::size_t largest = 0;
    for (const auto& sub : assignment) largest = std::max(largest, sub.size());
    return assignment.size() * largest;
}

} // namespace asi
