#pragma once

#include <string>

#include "asi/error.hpp"

namespace asi {

enum class StopKind { TrueError, Residual, MaxEpochs };

std::string to_string(StopKind k);

/// Termination test, evaluated at epoch boundaries (one epoch = m operator
/// applications). Every rule carries a hard epoch cap.
struct StoppingRule {
    StopKind kind = StopKind::MaxEpochs;
    double threshold = 0.0;      // on ||x - x*|| or ||A x - b||, absolute
    double epoch_cap = 1000.0;

    static StoppingRule true_error(double eps, double max_epochs) {
        detail::require_param(eps > 0.0, "stopping: threshold must be positive");
        detail::require_param(max_epochs > 0.0, "stopping: epoch cap must be positive");
        return {StopKind::TrueError, eps, max_epochs};
    }
    static StoppingRule residual(double eps, double max_epochs) {
        detail::require_param(eps > 0.0, "stopping: threshold must be positive");
        detail::require_param(max_epochs > 0.0, "stopping: epoch cap must be positive");
        return {StopKind::Residual, eps, max_epochs};
    }
    static StoppingRule max_epochs(double epochs) {
        detail::require_param(epochs > 0.0, "stopping: epoch cap must be positive");
        return {StopKind::MaxEpochs, 0.0, epochs};
    }
};

} // namespace asi
