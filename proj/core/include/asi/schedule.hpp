#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "asi/error.hpp"

namespace asi {

/// Largest provably safe step size under a staleness cap tau with margin
/// epsilon: 1 / (2*tau + 1 + epsilon).
double max_step_size(int tau, double epsilon);

/// The general bound 1 / (1 + tau*(1/mu + mu) + epsilon); mu = 1 recovers
/// max_step_size and is the optimal choice of mu.
double max_step_size_general(int tau, double epsilon, double mu);

/// Heuristic bound 1 / (1 + 2*tau/sqrt(m)) for uniformly random controls
/// independent of the delays. Reported for comparison; not a safety proof for
/// deterministic controls.
double max_step_size_random_control(int tau, std::size_t m);

/// Per-iteration relaxation parameters lambda_k, always inside (0,1).
/// With a safety clamp attached, emitted values also respect the proven bound
/// max_step_size(tau, margin).
class StepSchedule {
  public:
    static StepSchedule constant(double lambda);

    /// Emits the listed values in order, then repeats the last one.
    static StepSchedule sequence(std::vector<double> lambdas);

    /// Returns a copy whose emissions are clamped to max_step_size(tau, margin).
    StepSchedule clamped(int tau, double margin = 1e-3) const;

    double at(std::int64_t k) const;

    double margin() const { return margin_; }
    bool is_clamped() const { return clamp_.has_value(); }
    double clamp_value() const { return clamp_.value(); }

  private:
    StepSchedule() = default;

    std::vector<double> values_;  // size 1 for the constant kind
    std::optional<double> clamp_;
    double margin_ = 1e-3;
};

} // namespace asi
