#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include <json.hpp>

#include "asi/operator.hpp"
#include "asi/schedule.hpp"
#include "asi/sparse.hpp"
#include "asi/step.hpp"
#include "asi/stopping.hpp"
#include "asi/xi.hpp"

namespace asi {

/// Non-owning view of the linear system a run is solving. A may be null for
/// pure operator runs; x_true is optional and enables true-error metrics.
struct ProblemView {
    const SparseMatrix* A = nullptr;
    std::span<const double> b{};
    std::span<const double> x_true{};
};

/// Per-step payload handed to observers (test hooks, trajectory capture).
/// Spans are only valid during the callback.
struct StepEvent {
    std::int64_t k = 0;
    std::size_t op_index = 0;
    int delay = 0;
    double lambda = 0.0;
    std::span<const double> x_prev{};
    std::span<const double> x_next{};
    std::span<const double> xhat{};
    const XiStepAudit* xi = nullptr;  // set when a xi reference is tracked
};

using StepObserver = std::function<void(const StepEvent&)>;

struct EngineOptions {
    IterationMode mode = IterationMode::Asi;
    StepSchedule schedule = StepSchedule::constant(0.5);
    int tau = 0;                      // staleness cap
    StoppingRule stop = StoppingRule::max_epochs(100.0);
    std::uint64_t seed = 1;
    Vector x0;                        // empty -> zero start

    // xi monitoring (test/audit only; z is a known solution)
    std::optional<Vector> xi_reference;
    double xi_mu = 1.0;
    double xi_epsilon = 1e-3;

    bool audit_inertial = false;        // bitwise convex+inertial recombination
    bool audit_staleness_bound = false; // ||x - xhat|| <= sum of recent step norms
    bool compute_final_op_residuals = false;

    std::int64_t metrics_every = 0;   // steps between metric rows; 0 = each epoch
    bool record_rows = true;
    double divergence_norm = 1e12;

    nlohmann::json config_echo;       // copied verbatim into the summary
};

} // namespace asi
