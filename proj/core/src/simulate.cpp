#include "asi/simulate.hpp"

#include <algorithm>
#include <chrono>

#include "asi/rng.hpp"
#include "run_driver.hpp"

namespace asi {

namespace {
double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}
} // namespace

RunRecord simulate(std::span<const OperatorPtr> ops, const ProblemView& problem,
                   ControlSequence control, DelayModel delays, const EngineOptions& opts,
                   const StepObserver& observer) {
    detail::require(control.operator_count() == ops.size(),
                    "simulate: control/operator count mismatch");
    detail::require(delays.kind() != DelayKind::RuntimeMeasured,
                    "simulate: runtime-measured delays need the node-pool engine");
    detail::require(delays.tau() <= opts.tau, "simulate: delay model exceeds the cap");

    const auto start = std::chrono::steady_clock::now();
    detail::RunDriver driver(ops, problem, opts, "simulate", opts.tau, observer);

    driver.warmup(opts.tau);
    while (!driver.stopped()) {
        const std::size_t op = control.next();
        const int depth = delays.at(driver.iteration());
        // Rows carry wall_ms = 0 so that identical seeds rerun byte-identically.
        if (!driver.apply_from_depth(op, depth, 0, driver.iteration(), 0.0)) break;
    }
    return driver.finish(elapsed_ms(start));
}

RunRecord simulate_node_pool(std::span<const OperatorPtr> ops, const ProblemView& problem,
                             const NodePool& pool, ServiceModel service,
                             const EngineOptions& opts, const StepObserver& observer) {
    pool.validate(ops.size());
    detail::require_param(service.min_ticks >= 1 && service.max_ticks >= service.min_ticks,
                          "simulate: bad service model");

    const auto start = std::chrono::steady_clock::now();
    detail::RunDriver driver(ops, problem, opts, "simulate-pool", opts.tau, observer);
    Rng rng(opts.seed);

    const std::size_t w = pool.node_count();
    struct NodeState {
        std::size_t cursor = 0;      // position in the subcollection
        std::size_t op = 0;          // operator being computed
        std::int64_t read_version = 0;
        std::int64_t done_at = 0;    // completion tick
    };
    std::vector<NodeState> nodes(w);
    std::int64_t version = 1;  // 1-based iterate version; bumps on every apply

    auto service_ticks = [&]() {
        return rng.uniform_int(service.min_ticks, service.max_ticks);
    };
    auto dispatch = [&](std::size_t ell, std::int64_t now, bool advance_cursor) {
        NodeState& n = nodes[ell];
        if (advance_cursor) n.cursor = (n.cursor + 1) % pool.assignment[ell].size();
        n.op = pool.assignment[ell][n.cursor];
        n.read_version = version;
        n.done_at = now + service_ticks();
    };
    for (std::size_t ell = 0; ell < w; ++ell) {
        nodes[ell].cursor = 0;
        nodes[ell].op = pool.assignment[ell][0];
        nodes[ell].read_version = version;
        nodes[ell].done_at = service_ticks();
    }

    while (!driver.stopped()) {
        std::int64_t tick = nodes[0].done_at;
        for (const NodeState& n : nodes) tick = std::min(tick, n.done_at);
        // All arrivals of this tick, applied in node-index order.
        for (std::size_t ell = 0; ell < w && !driver.stopped(); ++ell) {
            NodeState& n = nodes[ell];
            if (n.done_at != tick) continue;
            const int staleness = static_cast<int>(version - n.read_version);
            if (staleness > opts.tau) {
                driver.note_refusal();
                dispatch(ell, tick, /*advance_cursor=*/false);  // recompute same operator
                continue;
            }
            const bool keep_going = driver.apply_from_depth(
                n.op, staleness, static_cast<int>(ell), tick, 0.0);
            ++version;
            if (!keep_going) break;
            dispatch(ell, tick, /*advance_cursor=*/true);
        }
    }
    return driver.finish(elapsed_ms(start));
}

} // namespace asi
