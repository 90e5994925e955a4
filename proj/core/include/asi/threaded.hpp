#pragma once

#include "asi/engine.hpp"
#include "asi/pool.hpp"
#include "asi/record.hpp"

namespace asi {

/// Transmission-failure injection for robustness tests: the chosen node's
/// responses number [after, after + count) are dropped before reaching the
/// master, which re-dispatches the same operator.
struct FaultPlan {
    int node = -1;              // -1 disables injection
    std::int64_t after = 0;     // responses sent successfully before failures start
    int count = 1;
};

/// Shared-memory master/worker run. The master owns the only mutable iterate;
/// workers receive immutable snapshots, return T_i(snapshot), and are
/// re-dispatched after each application. An arrival staler than opts.tau is
/// refused and recomputed from a fresh snapshot, so every applied update
/// respects the cap by construction. Arrivals drained together are applied in
/// node-index order. Not bit-reproducible across runs; only the simulators
/// are.
RunRecord run_threaded(std::span<const OperatorPtr> ops, const ProblemView& problem,
                       const NodePool& pool, const EngineOptions& opts,
                       const FaultPlan& faults = {}, int max_retries = 64);

} // namespace asi
