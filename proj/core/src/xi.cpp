#include "asi/xi.hpp"

#include "asi/error.hpp"

namespace asi {

XiMonitor::XiMonitor(int tau, double mu, double epsilon, Vector z)
    : tau_(tau), mu_(mu), epsilon_(epsilon), z_(std::move(z)) {
    detail::require_param(tau_ >= 0, "xi monitor: tau must be nonnegative");
    detail::require_param(mu_ > 0.0, "xi monitor: mu must be positive");
    detail::require_param(epsilon_ > 0.0, "xi monitor: epsilon must be positive");
    detail::require_param(!z_.empty(), "xi monitor: empty reference point");
    coeff_.resize(static_cast<std::size_t>(tau_) + 1);
    for (int j = 1; j <= tau_ + 1; ++j)
        coeff_[static_cast<std::size_t>(j - 1)] = (tau_ + 1 - j) * mu_ + epsilon_;
}

double XiMonitor::coefficient(int j) const {
    detail::require(j >= 1 && j <= tau_ + 1, "xi monitor: coefficient index out of range");
    return coeff_[static_cast<std::size_t>(j - 1)];
}

double XiMonitor::step_bound() const {
    return 1.0 / (1.0 + tau_ * (1.0 / mu_ + mu_) + epsilon_);
}

double XiMonitor::value(std::span<const Vector> history) const {
    detail::require(history.size() == static_cast<std::size_t>(tau_) + 1,
                    "xi: history must hold tau+1 iterates");
    for (const Vector& v : history)
        detail::require(v.size() == z_.size(), "xi: dimension mismatch");
    double xi = dist_sq(history[0], z_);
    for (int l = 1; l <= tau_; ++l)
        xi += coefficient(l) * dist_sq(history[static_cast<std::size_t>(l - 1)],
                                       history[static_cast<std::size_t>(l)]);
    return xi;
}

double xi_value(const XiMonitor& monitor, std::span<const Vector> history) {
    return monitor.value(history);
}

XiTracker::XiTracker(XiMonitor monitor) : monitor_(std::move(monitor)) {}

void XiTracker::start(std::span<const double> x1) {
    detail::require(x1.size() == monitor_.z().size(), "xi tracker: dimension mismatch");
    diffs_.assign(static_cast<std::size_t>(monitor_.tau()), 0.0);
    dist_sq_z_ = dist_sq(x1, monitor_.z());
    xi_ = dist_sq_z_;  // all retained differences are zero at the start
    started_ = true;
}

double XiTracker::weighted_diffs() const {
    double s = 0.0;
    for (int l = 1; l <= monitor_.tau(); ++l)
        s += monitor_.coefficient(l) * diffs_[static_cast<std::size_t>(l - 1)];
    return s;
}

void XiTracker::on_warmup() {
    detail::require(started_, "xi tracker: start() not called");
    if (monitor_.tau() > 0) {
        diffs_.push_front(0.0);
        diffs_.pop_back();
    }
    xi_ = dist_sq_z_ + weighted_diffs();
}

XiStepAudit XiTracker::on_step(std::span<const double> x_prev,
                               std::span<const double> x_next, double lambda,
                               double s_norm_sq) {
    detail::require(started_, "xi tracker: start() not called");
    const int tau = monitor_.tau();

    XiStepAudit audit;
    audit.xi_prev = xi_;

    const double new_diff = dist_sq(x_next, x_prev);
    const double oldest_diff = tau == 0 ? new_diff : diffs_.back();

    // xi_prev - lambda*||S(xhat)||^2 * (1 - lambda*(1 + tau/mu + c_1))
    //         - c_{tau+1} * ||x^{k+1-tau} - x^{k-tau}||^2
    const double c1 = monitor_.coefficient(1);
    const double mu = monitor_.mu();
    audit.decrease_bound = xi_ -
                           lambda * s_norm_sq * (1.0 - lambda * (1.0 + tau / mu + c1)) -
                           monitor_.coefficient(tau + 1) * oldest_diff;

    if (tau > 0) {
        diffs_.push_front(new_diff);
        diffs_.pop_back();
    }
    dist_sq_z_ = dist_sq(x_next, monitor_.z());
    xi_ = dist_sq_z_ + weighted_diffs();
    audit.xi_next = xi_;
    return audit;
}

} // namespace asi
