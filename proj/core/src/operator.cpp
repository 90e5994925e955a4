#include "asi/operator.hpp"

#include <algorithm>

#include "asi/rng.hpp"

namespace asi {

void residual_into(const FixedPointOperator& op, std::span<const double> x,
                   std::span<double> out) {
    op.check_dim(x);
    detail::require(out.size() == op.dimension(), "residual: output dimension mismatch");
    op.apply(x, out);
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] - out[j];
}

Vector residual(const FixedPointOperator& op, std::span<const double> x) {
    Vector out(op.dimension());
    residual_into(op, x, out);
    return out;
}

RelaxedOperator::RelaxedOperator(OperatorPtr base, double alpha)
    : base_(std::move(base)), alpha_(alpha) {
    detail::require(base_ != nullptr, "relax: null operator");
    detail::require_param(alpha_ >= 0.0 && alpha_ <= 2.0, "relax: alpha must lie in [0,2]");
}

void RelaxedOperator::apply(std::span<const double> x, std::span<double> out) const {
    check_dim(x);
    base_->apply(x, out);
    const double keep = 1.0 - alpha_;
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = keep * x[j] + alpha_ * out[j];
}

std::string RelaxedOperator::describe() const {
    return "relax(" + base_->describe() + ", " + std::to_string(alpha_) + ")";
}

RelaxedOperator relax(OperatorPtr base, double alpha) {
    return RelaxedOperator(std::move(base), alpha);
}

ProbeReport nonexpansive_probe(const FixedPointOperator& op, int trials,
                               std::uint64_t seed, double scale, double tolerance) {
    detail::require_param(trials >= 1, "nonexpansive_probe: trials must be >= 1");
    const std::size_t n = op.dimension();
    Rng rng(seed);
    Vector x(n), y(n), tx(n), ty(n);

    ProbeReport report;
    report.trials = trials;
    report.tolerance = tolerance;
    for (int t = 0; t < trials; ++t) {
        rng.fill_uniform(x, -scale, scale);
        rng.fill_uniform(y, -scale, scale);
        const double d = dist(x, y);
        if (d == 0.0) continue;
        op.apply(x, tx);
        op.apply(y, ty);
        const double ratio = dist(tx, ty) / d;
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (ratio > 1.0 + tolerance) ++report.violations;
    }
    return report;
}

} // namespace asi
