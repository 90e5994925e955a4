#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

namespace asi {

enum class Termination {
    Converged,
    MaxEpochs,
    Diverged,
    StalenessViolation,
    Aborted,
};

std::string to_string(Termination t);

/// One CSV row per applied update. Metric fields hold NaN when not evaluated
/// at that step and are written as empty CSV cells.
struct StepLogRow {
    std::int64_t k = 0;       // 1-based iteration index
    std::int64_t epoch = 0;   // 1-based epoch the step belongs to
    std::int64_t theta = 0;   // time step (simulated ticks or arrival batch)
    int node = 0;             // 0-based worker id
    int op_index = 0;         // 0-based operator id
    int delay = 0;            // realized staleness of the iterate used
    double residual_b = std::numeric_limits<double>::quiet_NaN();
    double true_error = std::numeric_limits<double>::quiet_NaN();
    double xi = std::numeric_limits<double>::quiet_NaN();
    double wall_ms = 0.0;     // 0 in simulate mode (kept deterministic)
};

struct DelayHistogram {
    std::vector<std::int64_t> counts;

    void add(int delay);
    int max_delay() const;
    std::int64_t total() const;
};

struct RunSummary {
    nlohmann::json config;  // verbatim echo of the run configuration

    std::string engine;      // "simulate", "simulate-pool", "threaded"
    std::string mode;        // "asi" or "ekn"
    std::int64_t operator_count = 0;
    std::int64_t applied_steps = 0;
    std::int64_t warmup_steps = 0;
    double epochs = 0.0;     // applied_steps / m
    Termination termination = Termination::MaxEpochs;
    double wall_ms = 0.0;
    int tau_cap = 0;
    int realized_tau = 0;

    double final_residual_b = std::numeric_limits<double>::quiet_NaN();
    double final_true_error = std::numeric_limits<double>::quiet_NaN();
    double final_xi = std::numeric_limits<double>::quiet_NaN();
    double final_max_op_residual = std::numeric_limits<double>::quiet_NaN();

    // audit counters (active only when the corresponding audit is enabled)
    std::int64_t xi_violations = 0;          // xi increased beyond tolerance
    double xi_worst_increase = 0.0;          // max(xi_next - xi_prev)
    std::int64_t xi_bound_violations = 0;    // xi_next above the decrease bound
    double xi_bound_worst_gap = 0.0;
    std::int64_t inertial_audit_failures = 0;
    std::int64_t staleness_bound_failures = 0;
    std::int64_t staleness_refusals = 0;     // arrivals recomputed due to the cap
    std::int64_t dropped_responses = 0;      // failed transmissions

    nlohmann::json to_json() const;
};

struct RunRecord {
    std::vector<StepLogRow> rows;
    DelayHistogram delays;
    RunSummary summary;
    std::vector<double> final_iterate;

    std::string csv() const;
    void write_csv(const std::filesystem::path& path) const;
    void write_summary_json(const std::filesystem::path& path) const;
};

/// Largest realized staleness over all applied updates.
int realized_tau(const RunRecord& record);

} // namespace asi
