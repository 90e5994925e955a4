#pragma once

// Internal stepping core shared by the simulators and the threaded runtime.
// Owns the iterate history, metrics, audits, and the run record.

#include <deque>
#include <string>

#include "asi/engine.hpp"
#include "asi/record.hpp"

namespace asi::detail {

class RunDriver {
  public:
    RunDriver(std::span<const OperatorPtr> ops, const ProblemView& problem,
              const EngineOptions& opts, std::string engine_name, int ring_tau,
              const StepObserver& observer);

    std::span<const double> current() const { return state_.history.current(); }
    std::int64_t iteration() const { return state_.k; }
    std::int64_t applied() const { return applied_; }
    std::size_t operator_count() const { return ops_.size(); }
    double epochs() const {
        return static_cast<double>(applied_) / static_cast<double>(ops_.size());
    }

    bool stopped() const { return stopped_; }
    Termination termination() const { return termination_; }

    /// Warm-up copies (x^{k+1} = x^k); only meaningful for the scripted-delay
    /// simulator, which may reference depths up to tau from the start.
    void warmup(std::int64_t steps);

    /// Applies T_{op} to the ring iterate `depth` steps back. Returns false
    /// when the run reached a termination condition.
    bool apply_from_depth(std::size_t op_index, int depth, int node, std::int64_t theta,
                          double wall_ms);

    /// Applies an externally evaluated update (threaded runtime): xhat is the
    /// snapshot the worker read and t = T(xhat).
    bool apply_external(std::size_t op_index, std::span<const double> xhat,
                        std::span<const double> t, int delay, int node,
                        std::int64_t theta, double wall_ms);

    void note_refusal() { ++record_.summary.staleness_refusals; }
    void note_drop() { ++record_.summary.dropped_responses; }
    void abort_run(Termination reason);

    RunRecord finish(double wall_ms_total);

  private:
    /// Shared post-combine bookkeeping; `t` is empty on the sparse fast path
    /// (which is only taken when no audit needs the materialized image).
    bool finish_step(std::size_t op_index, std::span<const double> x,
                     std::span<const double> xhat, std::span<const double> t,
                     double lambda, double next_norm_sq, int delay, int node,
                     std::int64_t theta, double wall_ms);
    void eval_metrics(StepLogRow& row, std::span<const double> x);
    bool eval_stop(std::span<const double> x);

    std::span<const OperatorPtr> ops_;
    ProblemView problem_;
    const EngineOptions& opts_;
    StepObserver observer_;

    AsiState state_;
    std::int64_t applied_ = 0;
    bool stopped_ = false;
    Termination termination_ = Termination::MaxEpochs;

    std::vector<const SparseResidualOperator*> sparse_;  // null where unsupported
    Vector t_ws_;         // operator output workspace (apply_from_depth)
    Vector delta_ws_;     // sparse-path residual values
    Vector convex_ws_;    // audit workspaces
    Vector inertial_ws_;

    std::optional<XiTracker> xi_;
    std::deque<double> diff_norms_;  // last tau step norms, newest first

    double divergence_norm_sq_ = 0.0;
    RunRecord record_;
    double last_residual_b_ = std::numeric_limits<double>::quiet_NaN();
    double last_true_error_ = std::numeric_limits<double>::quiet_NaN();
};

} // namespace asi::detail
