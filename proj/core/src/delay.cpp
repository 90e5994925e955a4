#include "asi/delay.hpp"

#include <algorithm>

namespace asi {

DelayModel DelayModel::zero() { return DelayModel(DelayKind::Zero, 0); }

DelayModel DelayModel::scripted(int tau, std::vector<int> delays) {
    detail::require_param(tau >= 0, "delay model: tau must be nonnegative");
    detail::require_param(!delays.empty(), "delay model: empty script");
    for (int d : delays)
        detail::require_param(d >= 0 && d <= tau, "delay model: scripted delay beyond tau");
    DelayModel m(DelayKind::Scripted, tau);
    m.script_ = std::move(delays);
    return m;
}

DelayModel DelayModel::uniform(int tau, std::uint64_t seed) {
    detail::require_param(tau >= 0, "delay model: tau must be nonnegative");
    DelayModel m(DelayKind::UniformRandom, tau);
    m.rng_ = Rng(seed);
    return m;
}

DelayModel DelayModel::runtime_measured(int tau) {
    detail::require_param(tau >= 0, "delay model: tau must be nonnegative");
    return DelayModel(DelayKind::RuntimeMeasured, tau);
}

int DelayModel::at(std::int64_t k) {
    detail::require(k >= 1, "delay model: iterations are 1-based");
    const int reach = static_cast<int>(std::min<std::int64_t>(tau_, k - 1));
    switch (kind_) {
        case DelayKind::Zero:
            return 0;
        case DelayKind::Scripted: {
            const int d = script_[cursor_];
            cursor_ = (cursor_ + 1) % script_.size();
            return std::min(d, reach);
        }
        case DelayKind::UniformRandom:
            return static_cast<int>(rng_.uniform_int(0, reach));
        case DelayKind::RuntimeMeasured:
            throw ContractViolation("delay model: runtime-measured delays cannot be queried");
    }
    throw ContractViolation("delay model: bad kind");
}

} // namespace asi
