#include "asi/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace asi {

double max_step_size(int tau, double epsilon) {
    detail::require_param(tau >= 0, "max_step_size: tau must be nonnegative");
    detail::require_param(epsilon > 0.0, "max_step_size: epsilon must be positive");
    return 1.0 / (2.0 * tau + 1.0 + epsilon);
}

double max_step_size_general(int tau, double epsilon, double mu) {
    detail::require_param(tau >= 0, "max_step_size: tau must be nonnegative");
    detail::require_param(epsilon > 0.0, "max_step_size: epsilon must be positive");
    detail::require_param(mu > 0.0, "max_step_size: mu must be positive");
    return 1.0 / (1.0 + tau * (1.0 / mu + mu) + epsilon);
}

double max_step_size_random_control(int tau, std::size_t m) {
    detail::require_param(tau >= 0, "max_step_size: tau must be nonnegative");
    detail::require_param(m >= 1, "max_step_size: m must be positive");
    return 1.0 / (1.0 + 2.0 * tau / std::sqrt(static_cast<double>(m)));
}

StepSchedule StepSchedule::constant(double lambda) {
    detail::require_param(lambda > 0.0 && lambda < 1.0,
                          "step schedule: lambda must lie in (0,1)");
    StepSchedule s;
    s.values_ = {lambda};
    return s;
}

StepSchedule StepSchedule::sequence(std::vector<double> lambdas) {
    detail::require_param(!lambdas.empty(), "step schedule: empty sequence");
    for (double l : lambdas)
        detail::require_param(l > 0.0 && l < 1.0, "step schedule: lambda must lie in (0,1)");
    StepSchedule s;
    s.values_ = std::move(lambdas);
    return s;
}

StepSchedule StepSchedule::clamped(int tau, double margin) const {
    StepSchedule s = *this;
    s.margin_ = margin;
    s.clamp_ = max_step_size(tau, margin);
    return s;
}

double StepSchedule::at(std::int64_t k) const {
    detail::require(k >= 1, "step schedule: iterations are 1-based");
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(k - 1),
                                                values_.size() - 1);
    const double v = values_[i];
    return clamp_ ? std::min(v, *clamp_) : v;
}

} // namespace asi
