#include "asi/step.hpp"

namespace asi {

std::string to_string(IterationMode m) {
    return m == IterationMode::Asi ? "asi" : "ekn";
}

// The three kernels below must stay in exact arithmetic agreement:
// combine_step computes, per coordinate, the sum of the expressions used by
// convex_part_into and inertial_part_into. Compiled with -ffp-contract=off.

void convex_part_into(double lambda, std::span<const double> x,
                      std::span<const double> t, std::span<double> out) {
    const double keep = 1.0 - lambda;
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = keep * x[j] + lambda * t[j];
}

void inertial_part_into(IterationMode mode, double lambda, std::span<const double> x,
                        std::span<const double> xhat, std::span<double> out) {
    if (mode == IterationMode::Ekn) {
        for (std::size_t j = 0; j < x.size(); ++j) out[j] = 0.0;
        return;
    }
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = lambda * (x[j] - xhat[j]);
}

void combine_step(IterationMode mode, double lambda, std::span<const double> x,
                  std::span<const double> xhat, std::span<const double> t,
                  std::span<double> next) {
    const double keep = 1.0 - lambda;
    if (mode == IterationMode::Ekn) {
        for (std::size_t j = 0; j < x.size(); ++j)
            next[j] = (keep * x[j] + lambda * t[j]) + 0.0;
        return;
    }
    for (std::size_t j = 0; j < x.size(); ++j)
        next[j] = (keep * x[j] + lambda * t[j]) + lambda * (x[j] - xhat[j]);
}

double combine_step_norm(IterationMode mode, double lambda, std::span<const double> x,
                         std::span<const double> xhat, std::span<const double> t,
                         std::span<double> next) {
    const double keep = 1.0 - lambda;
    double nsq = 0.0;
    if (mode == IterationMode::Ekn) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double v = (keep * x[j] + lambda * t[j]) + 0.0;
            next[j] = v;
            nsq += v * v;
        }
        return nsq;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double v = (keep * x[j] + lambda * t[j]) + lambda * (x[j] - xhat[j]);
        next[j] = v;
        nsq += v * v;
    }
    return nsq;
}

double combine_step_sparse(IterationMode mode, double lambda, std::span<const double> x,
                           std::span<const double> xhat,
                           std::span<const std::int32_t> support,
                           std::span<const double> delta, std::span<double> next) {
    // Off the support T(xhat)_j == xhat_j bitwise, so the dense pass uses xhat
    // for the image and a second sparse pass patches the supported entries.
    const double keep = 1.0 - lambda;
    double nsq = 0.0;
    if (mode == IterationMode::Ekn) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double v = (keep * x[j] + lambda * xhat[j]) + 0.0;
            next[j] = v;
            nsq += v * v;
        }
        for (std::size_t i = 0; i < support.size(); ++i) {
            const auto j = static_cast<std::size_t>(support[i]);
            const double tj = xhat[j] + delta[i];
            const double v = (keep * x[j] + lambda * tj) + 0.0;
            nsq += v * v - next[j] * next[j];
            next[j] = v;
        }
        return nsq;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double v = (keep * x[j] + lambda * xhat[j]) + lambda * (x[j] - xhat[j]);
        next[j] = v;
        nsq += v * v;
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
        const auto j = static_cast<std::size_t>(support[i]);
        const double tj = xhat[j] + delta[i];
        const double v = (keep * x[j] + lambda * tj) + lambda * (x[j] - xhat[j]);
        nsq += v * v - next[j] * next[j];
        next[j] = v;
    }
    return nsq;
}

IterateHistory::IterateHistory(int tau, Vector initial)
    : tau_(tau), dim_(initial.size()) {
    detail::require_param(tau_ >= 0, "history: tau must be nonnegative");
    detail::require_param(dim_ > 0, "history: empty initial iterate");
    slots_.assign(static_cast<std::size_t>(tau_) + 2, initial);
}

std::span<const double> IterateHistory::current() const { return slots_[head_]; }

std::span<const double> IterateHistory::at_depth(int depth) const {
    detail::require(depth >= 0, "history: negative depth");
    if (depth > tau_) throw StalenessViolation("history: depth exceeds tau");
    const std::size_t n = slots_.size();
    return slots_[(head_ + n - static_cast<std::size_t>(depth)) % n];
}

std::span<double> IterateHistory::write_slot() {
    return slots_[(head_ + 1) % slots_.size()];
}

void IterateHistory::advance() { head_ = (head_ + 1) % slots_.size(); }

void IterateHistory::advance_unchanged() {
    auto w = write_slot();
    auto c = current();
    for (std::size_t j = 0; j < dim_; ++j) w[j] = c[j];
    advance();
}

std::vector<Vector> IterateHistory::snapshot() const {
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(tau_) + 1);
    for (int d = 0; d <= tau_; ++d) {
        auto s = at_depth(d);
        out.emplace_back(s.begin(), s.end());
    }
    return out;
}

void warmup_step(AsiState& state) {
    detail::require(state.in_warmup(), "warmup_step: past the warm-up phase");
    state.history.advance_unchanged();
    ++state.k;
}

StepBreakdown asi_step(AsiState& state, double lambda, const FixedPointOperator& op,
                       int delay_depth) {
    detail::require(!state.in_warmup(),
                    "asi_step: still warming up; caller must emit x^{k+1} = x^k");
    detail::require_param(lambda > 0.0 && lambda < 1.0, "asi_step: lambda outside (0,1)");
    detail::require(op.dimension() == state.history.dimension(),
                    "asi_step: operator dimension mismatch");
    if (delay_depth < 0 || delay_depth > state.tau())
        throw StalenessViolation("asi_step: delay depth exceeds tau");

    const auto x = state.current();
    const auto xhat = state.history.at_depth(delay_depth);
    Vector t(op.dimension());
    op.apply(xhat, t);

    auto next = state.history.write_slot();
    combine_step(state.mode, lambda, x, xhat, t, next);

    StepBreakdown b;
    b.convex_part.resize(x.size());
    b.inertial_part.resize(x.size());
    convex_part_into(lambda, x, t, b.convex_part);
    inertial_part_into(state.mode, lambda, x, xhat, b.inertial_part);
    b.next.assign(next.begin(), next.end());

    state.history.advance();
    ++state.k;
    return b;
}

} // namespace asi
