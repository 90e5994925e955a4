#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "asi/operator.hpp"
#include "asi/vec.hpp"

namespace asi {

/// Asi applies the full update with the inertial extrapolation; Ekn applies
/// only the convex-combination part (no inertial term).
enum class IterationMode { Asi, Ekn };

std::string to_string(IterationMode m);

/// One update decomposed into its two parts:
///   convex_part   = (1-lambda)*x + lambda*T(xhat)
///   inertial_part = lambda*(x - xhat)      (zero vector in Ekn mode)
///   next          = convex_part + inertial_part
/// The next iterate is evaluated exactly in this order, coordinate by
/// coordinate, so the identity holds bitwise and can be audited after the
/// fact. With xhat == x the inertial part vanishes and both modes produce the
/// same bits.
struct StepBreakdown {
    Vector convex_part;
    Vector inertial_part;
    Vector next;
};

/// The shared step arithmetic. All engines and all audits go through these
/// three functions; they are deliberately kept out of line so that every call
/// site performs the identical floating-point sequence.
void combine_step(IterationMode mode, double lambda, std::span<const double> x,
                  std::span<const double> xhat, std::span<const double> t,
                  std::span<double> next);
void convex_part_into(double lambda, std::span<const double> x,
                      std::span<const double> t, std::span<double> out);
void inertial_part_into(IterationMode mode, double lambda, std::span<const double> x,
                        std::span<const double> xhat, std::span<double> out);

/// combine_step fused with the accumulation of sum(next_j^2); produces the
/// same next bitwise.
double combine_step_norm(IterationMode mode, double lambda, std::span<const double> x,
                         std::span<const double> xhat, std::span<const double> t,
                         std::span<double> next);

/// Fused form for T(xhat) = xhat + delta with sparse delta. next is bitwise
/// identical to combine_step with the materialized image; the returned squared
/// norm may differ from the dense accumulation by rounding (it guards the
/// divergence detector, which has orders of magnitude of slack).
double combine_step_sparse(IterationMode mode, double lambda, std::span<const double> x,
                           std::span<const double> xhat,
                           std::span<const std::int32_t> support,
                           std::span<const double> delta, std::span<double> next);

/// Ring buffer of the last tau+1 iterates plus one spare write slot.
/// Before iteration tau+1 every visible slot holds the initial iterate.
class IterateHistory {
  public:
    IterateHistory(int tau, Vector initial);

    int tau() const { return tau_; }
    std::size_t dimension() const { return dim_; }

    std::span<const double> current() const;
    /// depth 0 is the current iterate, depth tau the oldest retained one.
    std::span<const double> at_depth(int depth) const;

    /// Scratch slot for the next iterate; never aliases a readable slot.
    std::span<double> write_slot();
    /// Promotes the write slot to current.
    void advance();
    /// Copies the current iterate forward (the warm-up branch).
    void advance_unchanged();

    /// Newest-first copies of all tau+1 retained iterates.
    std::vector<Vector> snapshot() const;

  private:
    int tau_;
    std::size_t dim_;
    std::vector<Vector> slots_;  // tau + 2 buffers
    std::size_t head_ = 0;       // index of the current iterate
};

/// Mutable iteration state: the history ring, the 1-based iteration counter k
/// (x^k is the current iterate), and the update mode.
struct AsiState {
    AsiState(int tau, Vector initial, IterationMode mode_ = IterationMode::Asi)
        : history(tau, std::move(initial)), mode(mode_) {}

    IterateHistory history;
    std::int64_t k = 1;
    IterationMode mode;

    int tau() const { return history.tau(); }
    std::span<const double> current() const { return history.current(); }
    bool in_warmup() const { return k <= history.tau(); }
};

/// The warm-up branch: x^{k+1} = x^k, valid only while k <= tau.
void warmup_step(AsiState& state);

/// Applies one update using the iterate at `delay_depth` steps back and
/// advances the history ring. Requires k past warm-up, lambda in (0,1), and
/// delay_depth <= tau (StalenessViolation otherwise). Returns the breakdown;
/// breakdown.next is the new current iterate.
StepBreakdown asi_step(AsiState& state, double lambda, const FixedPointOperator& op,
                       int delay_depth);

} // namespace asi
