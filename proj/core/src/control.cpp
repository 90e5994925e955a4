#include "asi/control.hpp"

#include <algorithm>

namespace asi {

bool almost_cyclic_check(std::span<const std::size_t> window, std::size_t m,
                         std::size_t cyclicality_bound) {
    detail::require_param(m >= 1, "almost_cyclic_check: m must be positive");
    if (cyclicality_bound < m)
        throw InvalidParameter("almost_cyclic_check: bound below operator count");
    detail::require(window.size() >= cyclicality_bound,
                    "almost_cyclic_check: window shorter than the bound");
    for (std::size_t i : window)
        detail::require(i < m, "almost_cyclic_check: index out of range");

    // Sliding occurrence counts over each length-M subwindow.
    std::vector<std::size_t> count(m, 0);
    std::size_t missing = m;
    for (std::size_t i = 0; i < window.size(); ++i) {
        if (count[window[i]]++ == 0) --missing;
        if (i + 1 >= cyclicality_bound) {
            if (missing != 0) return false;
            const std::size_t out = window[i + 1 - cyclicality_bound];
            if (--count[out] == 0) ++missing;
        }
    }
    return true;
}

ControlSequence ControlSequence::cyclic(std::size_t m) {
    detail::require_param(m >= 1, "control: m must be positive");
    ControlSequence c;
    c.kind_ = ControlKind::Cyclic;
    c.m_ = m;
    c.cyclicality_ = m;
    return c;
}

ControlSequence ControlSequence::scripted(std::size_t m, std::vector<std::size_t> script) {
    detail::require_param(m >= 1, "control: m must be positive");
    detail::require_param(!script.empty(), "control: empty script");
    std::vector<char> seen(m, 0);
    for (std::size_t i : script) {
        detail::require_param(i < m, "control: script index out of range");
        seen[i] = 1;
    }
    for (std::size_t i = 0; i < m; ++i)
        detail::require_param(seen[i] != 0, "control: script never mentions an operator");

    // Smallest M such that every cyclic window of length M covers {0..m-1}:
    // for each start, grow until covered; the script repeats, so scanning two
    // periods bounds every window.
    const std::size_t len = script.size();
    std::size_t worst = 0;
    for (std::size_t start = 0; start < len; ++start) {
        std::vector<char> got(m, 0);
        std::size_t missing = m;
        std::size_t steps = 0;
        while (missing > 0) {
            const std::size_t idx = script[(start + steps) % len];
            if (!got[idx]) {
                got[idx] = 1;
                --missing;
            }
            ++steps;
        }
        worst = std::max(worst, steps);
    }
    ControlSequence c;
    c.kind_ = ControlKind::Scripted;
    c.m_ = m;
    c.script_ = std::move(script);
    c.cyclicality_ = std::max(worst, m);
    return c;
}

ControlSequence ControlSequence::per_node_cyclic(std::size_t m, NodePool pool) {
    pool.validate(m);
    ControlSequence c;
    c.kind_ = ControlKind::PerNodeCyclic;
    c.m_ = m;
    c.cyclicality_ = pool.merge_bound();
    c.script_.assign(pool.node_count(), 0);  // reused as per-node cursors
    c.pool_ = std::move(pool);
    return c;
}

std::size_t ControlSequence::next() {
    switch (kind_) {
        case ControlKind::Cyclic: {
            const std::size_t i = cursor_;
            cursor_ = (cursor_ + 1) % m_;
            return i;
        }
        case ControlKind::Scripted: {
            const std::size_t i = script_[cursor_];
            cursor_ = (cursor_ + 1) % script_.size();
            return i;
        }
        case ControlKind::PerNodeCyclic: {
            const auto& sub = pool_->assignment[pool_node_];
            std::size_t& cur = script_[pool_node_];
            const std::size_t i = sub[cur];
            cur = (cur + 1) % sub.size();
            pool_node_ = (pool_node_ + 1) % pool_->node_count();
            return i;
        }
    }
    throw ContractViolation("control: bad kind");
}

void ControlSequence::reset() {
    cursor_ = 0;
    pool_node_ = 0;
    if (kind_ == ControlKind::PerNodeCyclic) std::fill(script_.begin(), script_.end(), 0);
}

} // namespace asi
