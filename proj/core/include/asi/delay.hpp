#pragma once

#include <cstdint>
#include <vector>

#include "asi/error.hpp"
#include "asi/rng.hpp"

namespace asi {

enum class DelayKind { Zero, Scripted, UniformRandom, RuntimeMeasured };

/// Supplies the staleness depth d(k) of the iterate read at iteration k, with
/// the hard cap d(k) <= tau and d(k) <= k-1 (no iterate before the first one).
///
/// RuntimeMeasured is a tag for engines whose delays emerge from execution
/// (node-pool simulation and the threaded runtime); such a model cannot be
/// queried.
class DelayModel {
  public:
    static DelayModel zero();

    /// Entries are consumed in order starting at the first post-warm-up
    /// iteration and repeat cyclically.
    static DelayModel scripted(int tau, std::vector<int> delays);

    static DelayModel uniform(int tau, std::uint64_t seed);

    static DelayModel runtime_measured(int tau);

    DelayKind kind() const { return kind_; }
    int tau() const { return tau_; }

    /// Depth for (1-based) iteration k. Stateful for the random kind: engines
    /// query each iteration exactly once, in order.
    int at(std::int64_t k);

  private:
    DelayModel(DelayKind kind, int tau) : kind_(kind), tau_(tau), rng_(0) {}

    DelayKind kind_;
    int tau_;
    std::vector<int> script_;
    std::size_t cursor_ = 0;
    Rng rng_;
};

} // namespace asi
