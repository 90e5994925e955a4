#pragma once

#include "asi/control.hpp"
#include "asi/delay.hpp"
#include "asi/engine.hpp"
#include "asi/pool.hpp"
#include "asi/record.hpp"

namespace asi {

/// Single-threaded deterministic run: operator indices come from `control`,
/// staleness depths from `delays` (capped at opts.tau), and the first
/// opts.tau iterations are warm-up copies. Two invocations with identical
/// inputs produce byte-identical records.
RunRecord simulate(std::span<const OperatorPtr> ops, const ProblemView& problem,
                   ControlSequence control, DelayModel delays, const EngineOptions& opts,
                   const StepObserver& observer = {});

/// Per-task compute times for the node-pool simulation, in ticks.
struct ServiceModel {
    int min_ticks = 1;
    int max_ticks = 4;
};

/// Discrete-event emulation of the master/worker architecture: each node
/// walks its operator subcollection cyclically with seeded service times;
/// the master applies arrivals in (tick, node) order and refuses any arrival
/// staler than opts.tau, re-dispatching that node instead. Delays are
/// realized, not scripted, and grow with the node count. Deterministic given
/// the seed.
RunRecord simulate_node_pool(std::span<const OperatorPtr> ops, const ProblemView& problem,
                             const NodePool& pool, ServiceModel service,
                             const EngineOptions& opts, const StepObserver& observer = {});

} // namespace asi
