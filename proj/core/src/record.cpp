#include "asi/record.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "asi/error.hpp"

namespace asi {

std::string to_string(Termination t) {
    switch (t) {
        case Termination::Converged: return "converged";
        case Termination::MaxEpochs: return "max-epochs";
        case Termination::Diverged: return "diverged";
        case Termination::StalenessViolation: return "staleness-violation";
        case Termination::Aborted: return "aborted";
    }
    return "?";
}

void DelayHistogram::add(int delay) {
    detail::require(delay >= 0, "delay histogram: negative delay");
    if (static_cast<std::size_t>(delay) >= counts.size())
        counts.resize(static_cast<std::size_t>(delay) + 1, 0);
    ++counts[static_cast<std::size_t>(delay)];
}

int DelayHistogram::max_delay() const {
    for (std::size_t d = counts.size(); d > 0; --d)
        if (counts[d - 1] > 0) return static_cast<int>(d - 1);
    return 0;
}

std::int64_t DelayHistogram::total() const {
    std::int64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

nlohmann::json RunSummary::to_json() const {
    nlohmann::json j;
    j["config"] = config;
    j["engine"] = engine;
    j["mode"] = mode;
    j["operator_count"] = operator_count;
    j["applied_steps"] = applied_steps;
    j["warmup_steps"] = warmup_steps;
    j["epochs"] = epochs;
    j["termination"] = to_string(termination);
    j["wall_ms"] = wall_ms;
    j["tau_cap"] = tau_cap;
    j["realized_tau"] = realized_tau;
    auto put = [&j](const char* key, double v) {
        if (std::isnan(v))
            j[key] = nullptr;
        else
            j[key] = v;
    };
    put("final_residual_b", final_residual_b);
    put("final_true_error", final_true_error);
    put("final_xi", final_xi);
    put("final_max_op_residual", final_max_op_residual);
    j["xi_violations"] = xi_violations;
    j["xi_worst_increase"] = xi_worst_increase;
    j["xi_bound_violations"] = xi_bound_violations;
    j["xi_bound_worst_gap"] = xi_bound_worst_gap;
    j["inertial_audit_failures"] = inertial_audit_failures;
    j["staleness_bound_failures"] = staleness_bound_failures;
    j["staleness_refusals"] = staleness_refusals;
    j["dropped_responses"] = dropped_responses;
    return j;
}

std::string RunRecord::csv() const {
    std::string out = "k,epoch,theta,node,op_index,delay,residual_b,true_error,xi,wall_ms\n";
    char buf[512];
    auto metric = [](double v, char* b, std::size_t cap) -> const char* {
        if (std::isnan(v)) return "";
        std::snprintf(b, cap, "%.17g", v);
        return b;
    };
    char m1[40], m2[40], m3[40];
    for (const StepLogRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%lld,%lld,%lld,%d,%d,%d,%s,%s,%s,%.3f\n",
                      static_cast<long long>(r.k), static_cast<long long>(r.epoch),
                      static_cast<long long>(r.theta), r.node, r.op_index, r.delay,
                      metric(r.residual_b, m1, sizeof(m1)),
                      metric(r.true_error, m2, sizeof(m2)),
                      metric(r.xi, m3, sizeof(m3)), r.wall_ms);
        out += buf;
    }
    return out;
}

void RunRecord::write_csv(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path.string());
    const std::string body = csv();
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!f) throw IoError("write failed: " + path.string());
}

void RunRecord::write_summary_json(const std::filesystem::path& path) const {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path.string());
    f << summary.to_json().dump(2) << "\n";
    if (!f) throw IoError("write failed: " + path.string());
}

int realized_tau(const RunRecord& record) { return record.delays.max_delay(); }

} // namespace asi
