#pragma once

#include <deque>
#include <span>
#include <vector>

#include "asi/vec.hpp"

namespace asi {

/// Lyapunov-style monitor: with reference point z and weights
/// c_j = (tau+1-j)*mu + epsilon (j = 1..tau+1),
///
///   xi_k = ||x^k - z||^2 + sum_{l=1..tau} c_l * ||x^{k+1-l} - x^{k-l}||^2.
///
/// Under delays bounded by tau and steps lambda_k <= 1/(1+tau(1/mu+mu)+eps)
/// the sequence xi_k is nonincreasing. z must be a common fixed point for the
/// guarantee to apply; in this library z is the known synthetic solution and
/// the monitor is a test/audit device, not part of production solves.
class XiMonitor {
  public:
    XiMonitor(int tau, double mu, double epsilon, Vector z);

    int tau() const { return tau_; }
    double mu() const { return mu_; }
    double epsilon() const { return epsilon_; }
    std::span<const double> z() const { return z_; }

    /// c_j for j in [1, tau+1]; c_{tau+1} == epsilon.
    double coefficient(int j) const;

    /// The bound on lambda under which xi is monotone.
    double step_bound() const;

    /// xi from the last tau+1 iterates, newest first.
    double value(std::span<const Vector> history_newest_first) const;

  private:
    int tau_;
    double mu_;
    double epsilon_;
    std::vector<double> coeff_;  // c_1..c_{tau+1}
    Vector z_;
};

double xi_value(const XiMonitor& monitor, std::span<const Vector> history_newest_first);

/// Per-step audit numbers for one transition x^k -> x^{k+1}:
///   xi_prev, xi_next         the two sides of the monotonicity claim
///   decrease_bound           xi_prev - lambda*||S(xhat)||^2*(1 - lambda*(1 + tau/mu + c_1))
///                            - epsilon*||x^{k+1-tau} - x^{k-tau}||^2,
/// an upper bound for xi_next whenever the step-size condition holds.
struct XiStepAudit {
    double xi_prev = 0.0;
    double xi_next = 0.0;
    double decrease_bound = 0.0;
};

/// Streaming xi evaluation along a run. Feed every transition in order,
/// including warm-up copies (which contribute zero differences).
class XiTracker {
  public:
    explicit XiTracker(XiMonitor monitor);

    /// Must be called with the initial iterate before the first step.
    void start(std::span<const double> x1);

    double current_xi() const { return xi_; }

    /// Advances past one warm-up copy (x unchanged).
    void on_warmup();

    /// Advances past one applied update. s_norm_sq is ||xhat - T(xhat)||^2 for
    /// the operator used in the step.
    XiStepAudit on_step(std::span<const double> x_prev, std::span<const double> x_next,
                        double lambda, double s_norm_sq);

  private:
    XiMonitor monitor_;
    std::deque<double> diffs_;  // newest first; ||x^{k+1-l} - x^{k-l}||^2, l = 1..tau
    double dist_sq_z_ = 0.0;
    double xi_ = 0.0;
    bool started_ = false;

    double weighted_diffs() const;
};

} // namespace asi
