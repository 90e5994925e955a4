#include "run_driver.hpp"

#include <algorithm>
#include <cmath>

namespace asi::detail {

namespace {
Vector initial_iterate(const EngineOptions& opts, std::size_t dim) {
    if (opts.x0.empty()) return Vector(dim, 0.0);
    require(opts.x0.size() == dim, "engine: x0 dimension mismatch");
    return opts.x0;
}
} // namespace

RunDriver::RunDriver(std::span<const OperatorPtr> ops, const ProblemView& problem,
                     const EngineOptions& opts, std::string engine_name, int ring_tau,
                     const StepObserver& observer)
    : ops_(ops),
      problem_(problem),
      opts_(opts),
      observer_(observer),
      state_(ring_tau, initial_iterate(opts, ops.empty() ? 0 : ops.front()->dimension()),
             opts.mode) {
    require(!ops_.empty(), "engine: no operators");
    const std::size_t dim = ops_.front()->dimension();
    for (const auto& op : ops_)
        require(op && op->dimension() == dim, "engine: mixed operator dimensions");
    if (problem_.A) {
        require(problem_.A->cols() == dim, "engine: matrix/operator dimension mismatch");
        require(problem_.b.size() == problem_.A->rows(), "engine: rhs size mismatch");
    }
    if (!problem_.x_true.empty())
        require(problem_.x_true.size() == dim, "engine: x_true dimension mismatch");
    if (opts_.stop.kind == StopKind::Residual)
        require(problem_.A != nullptr, "engine: residual stopping needs the matrix");
    if (opts_.stop.kind == StopKind::TrueError)
        require(!problem_.x_true.empty(), "engine: true-error stopping needs x_true");

    t_ws_.resize(dim);
    sparse_.reserve(ops_.size());
    std::size_t widest = 0;
    for (const auto& op : ops_) {
        const auto* sp = dynamic_cast<const SparseResidualOperator*>(op.get());
        sparse_.push_back(sp);
        if (sp) widest = std::max(widest, sp->delta_support().size());
    }
    delta_ws_.resize(widest);
    if (opts_.audit_inertial) {
        convex_ws_.resize(dim);
        inertial_ws_.resize(dim);
    }
    if (opts_.xi_reference) {
        xi_.emplace(XiMonitor(opts_.tau, opts_.xi_mu, opts_.xi_epsilon, *opts_.xi_reference));
        xi_->start(state_.current());
    }
    diff_norms_.assign(static_cast<std::size_t>(opts_.tau), 0.0);
    divergence_norm_sq_ = opts_.divergence_norm * opts_.divergence_norm;

    record_.summary.config = opts_.config_echo;
    record_.summary.engine = std::move(engine_name);
    record_.summary.mode = to_string(opts_.mode);
    record_.summary.operator_count = static_cast<std::int64_t>(ops_.size());
    record_.summary.tau_cap = opts_.tau;
}

void RunDriver::warmup(std::int64_t steps) {
    for (std::int64_t i = 0; i < steps; ++i) {
        warmup_step(state_);
        if (xi_) xi_->on_warmup();
        if (opts_.tau > 0) {
            diff_norms_.push_front(0.0);
            diff_norms_.pop_back();
        }
        ++record_.summary.warmup_steps;
    }
}

bool RunDriver::apply_from_depth(std::size_t op_index, int depth, int node,
                                 std::int64_t theta, double wall_ms) {
    require(op_index < ops_.size(), "engine: operator index out of range");
    require(!stopped_, "engine: run already stopped");
    if (depth > opts_.tau)
        throw StalenessViolation("engine: applied update exceeds the staleness cap");

    const auto xhat = state_.history.at_depth(depth);
    const double lambda = opts_.schedule.at(state_.k);
    const auto x = state_.current();
    auto next = state_.history.write_slot();

    // The fused sparse path skips materializing T(xhat); the audits and the
    // xi tracker need the image, so they force the dense route.
    const SparseResidualOperator* sp = sparse_[op_index];
    if (sp && !opts_.audit_inertial && !xi_) {
        const auto support = sp->delta_support();
        auto delta = std::span<double>(delta_ws_).first(support.size());
        sp->delta_values(xhat, delta);
        const double nsq =
            combine_step_sparse(state_.mode, lambda, x, xhat, support, delta, next);
        return finish_step(op_index, x, xhat, {}, lambda, nsq, depth, node, theta,
                           wall_ms);
    }
    ops_[op_index]->apply(xhat, t_ws_);
    const double nsq = combine_step_norm(state_.mode, lambda, x, xhat, t_ws_, next);
    return finish_step(op_index, x, xhat, t_ws_, lambda, nsq, depth, node, theta,
                       wall_ms);
}

bool RunDriver::apply_external(std::size_t op_index, std::span<const double> xhat,
                               std::span<const double> t, int delay, int node,
                               std::int64_t theta, double wall_ms) {
    require(op_index < ops_.size(), "engine: operator index out of range");
    require(xhat.size() == state_.history.dimension() && t.size() == xhat.size(),
            "engine: external update dimension mismatch");
    require(!stopped_, "engine: run already stopped");
    if (delay > opts_.tau)
        throw StalenessViolation("engine: applied update exceeds the staleness cap");

    const double lambda = opts_.schedule.at(state_.k);
    const auto x = state_.current();
    auto next = state_.history.write_slot();
    const double nsq = combine_step_norm(state_.mode, lambda, x, xhat, t, next);
    return finish_step(op_index, x, xhat, t, lambda, nsq, delay, node, theta, wall_ms);
}

bool RunDriver::finish_step(std::size_t op_index, std::span<const double> x,
                            std::span<const double> xhat, std::span<const double> t,
                            double lambda, double next_norm_sq, int delay, int node,
                            std::int64_t theta, double wall_ms) {
    auto next = state_.history.write_slot();

    if (opts_.audit_inertial) {
        require(!t.empty(), "engine: audit requires the materialized image");
        convex_part_into(lambda, x, t, convex_ws_);
        inertial_part_into(state_.mode, lambda, x, xhat, inertial_ws_);
        for (std::size_t j = 0; j < next.size(); ++j) {
            if (next[j] != convex_ws_[j] + inertial_ws_[j]) {
                ++record_.summary.inertial_audit_failures;
                break;
            }
        }
    }
    if (opts_.audit_staleness_bound) {
        double bound = 0.0;
        for (double d : diff_norms_) bound += d;
        if (dist(x, xhat) > bound) ++record_.summary.staleness_bound_failures;
    }

    XiStepAudit xi_audit;
    if (xi_) {
        require(!t.empty(), "engine: xi tracking requires the materialized image");
        xi_audit = xi_->on_step(x, next, lambda, dist_sq(xhat, t));
        const double inc = xi_audit.xi_next - xi_audit.xi_prev;
        if (inc > 1e-12) {
            ++record_.summary.xi_violations;
            record_.summary.xi_worst_increase =
                std::max(record_.summary.xi_worst_increase, inc);
        }
        const double gap = xi_audit.xi_next - xi_audit.decrease_bound;
        if (gap > 1e-12) {
            ++record_.summary.xi_bound_violations;
            record_.summary.xi_bound_worst_gap =
                std::max(record_.summary.xi_bound_worst_gap, gap);
        }
    }

    if (observer_) {
        StepEvent ev;
        ev.k = state_.k;
        ev.op_index = op_index;
        ev.delay = delay;
        ev.lambda = lambda;
        ev.x_prev = x;
        ev.x_next = next;
        ev.xhat = xhat;
        ev.xi = xi_ ? &xi_audit : nullptr;
        observer_(ev);
    }

    if (opts_.tau > 0) {
        diff_norms_.push_front(dist(next, x));
        diff_norms_.pop_back();
    }

    record_.delays.add(delay);
    ++applied_;
    ++state_.k;
    state_.history.advance();

    const auto x_new = state_.current();

    StepLogRow row;
    row.k = state_.k - 1;  // the iteration that produced this update
    row.epoch = (applied_ - 1) / static_cast<std::int64_t>(ops_.size()) + 1;
    row.theta = theta;
    row.node = node;
    row.op_index = static_cast<int>(op_index);
    row.delay = delay;
    row.wall_ms = wall_ms;

    const bool epoch_boundary = applied_ % static_cast<std::int64_t>(ops_.size()) == 0;
    const bool metrics_due = opts_.metrics_every > 0
                                 ? (applied_ % opts_.metrics_every == 0)
                                 : epoch_boundary;
    if (metrics_due) eval_metrics(row, x_new);
    if (xi_) row.xi = xi_->current_xi();
    if (opts_.record_rows) record_.rows.push_back(row);

    // A NaN norm fails this comparison too.
    if (!(next_norm_sq <= divergence_norm_sq_)) {
        stopped_ = true;
        termination_ = Termination::Diverged;
        return false;
    }
    if (epoch_boundary && eval_stop(x_new)) return false;
    return true;
}

void RunDriver::eval_metrics(StepLogRow& row, std::span<const double> x) {
    if (problem_.A) {
        last_residual_b_ = problem_.A->residual_norm(x, problem_.b);
        row.residual_b = last_residual_b_;
    }
    if (!problem_.x_true.empty()) {
        last_true_error_ = dist(x, problem_.x_true);
        row.true_error = last_true_error_;
    }
}

bool RunDriver::eval_stop(std::span<const double> x) {
    bool hit = false;
    switch (opts_.stop.kind) {
        case StopKind::TrueError:
            hit = dist(x, problem_.x_true) < opts_.stop.threshold;
            break;
        case StopKind::Residual:
            hit = problem_.A->residual_norm(x, problem_.b) < opts_.stop.threshold;
            break;
        case StopKind::MaxEpochs:
            break;
    }
    if (hit) {
        stopped_ = true;
        termination_ = Termination::Converged;
        return true;
    }
    if (epochs() >= opts_.stop.epoch_cap) {
        stopped_ = true;
        termination_ = Termination::MaxEpochs;
        return true;
    }
    return false;
}

void RunDriver::abort_run(Termination reason) {
    stopped_ = true;
    termination_ = reason;
}

RunRecord RunDriver::finish(double wall_ms_total) {
    auto& s = record_.summary;
    s.applied_steps = applied_;
    s.epochs = epochs();
    s.termination = stopped_ ? termination_ : Termination::MaxEpochs;
    s.wall_ms = wall_ms_total;
    s.realized_tau = record_.delays.max_delay();

    const auto x = state_.current();
    if (problem_.A) s.final_residual_b = problem_.A->residual_norm(x, problem_.b);
    if (!problem_.x_true.empty()) s.final_true_error = dist(x, problem_.x_true);
    if (xi_) s.final_xi = xi_->current_xi();
    if (opts_.compute_final_op_residuals) {
        double worst = 0.0;
        for (const auto& op : ops_) {
            op->apply(x, t_ws_);
            worst = std::max(worst, dist(x, t_ws_));
        }
        s.final_max_op_residual = worst;
    }
    record_.final_iterate.assign(x.begin(), x.end());
    return std::move(record_);
}

} // namespace asi::detail
