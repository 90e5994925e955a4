#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include "asi/vec.hpp"

namespace asi {

/// A self-map T on real vectors of a fixed dimension. Solvers in this library
/// expect T to be nonexpansive (1-Lipschitz); that is a behavioral contract of
/// the concrete type, checked by nonexpansive_probe and the spectral audits
/// rather than by the interface.
class FixedPointOperator {
  public:
    virtual ~FixedPointOperator() = default;

    virtual std::size_t dimension() const = 0;

    /// Writes T(x) into out. x and out must not alias.
    virtual void apply(std::span<const double> x, std::span<double> out) const = 0;

    virtual std::string describe() const { return "operator"; }

    /// Allocating convenience form of apply.
    Vector operator()(std::span<const double> x) const {
        check_dim(x);
        Vector out(dimension());
        apply(x, out);
        return out;
    }

    void check_dim(std::span<const double> x) const {
        detail::require(x.size() == dimension(), "operator: dimension mismatch");
    }
};

using OperatorPtr = std::shared_ptr<const FixedPointOperator>;

/// Mixin for operators that move only a fixed set of coordinates:
/// T(x)_j = x_j + delta_j(x) with delta supported on delta_support().
/// Engines exploit this for row-action updates; apply() and the sparse form
/// must agree bitwise (apply copies x and adds the same deltas).
class SparseResidualOperator : public FixedPointOperator {
  public:
    virtual std::span<const std::int32_t> delta_support() const = 0;
    /// Writes the delta values aligned with delta_support().
    virtual void delta_values(std::span<const double> x, std::span<double> out) const = 0;
};

/// x - T(x); the zero vector exactly at fixed points of T.
Vector residual(const FixedPointOperator& op, std::span<const double> x);
void residual_into(const FixedPointOperator& op, std::span<const double> x,
                   std::span<double> out);

class IdentityOperator final : public FixedPointOperator {
  public:
    explicit IdentityOperator(std::size_t dim) : dim_(dim) {}
    std::size_t dimension() const override { return dim_; }
    void apply(std::span<const double> x, std::span<double> out) const override {
        check_dim(x);
        for (std::size_t j = 0; j < dim_; ++j) out[j] = x[j];
    }
    std::string describe() const override { return "identity"; }

  private:
    std::size_t dim_;
};

/// (1-alpha)*Id + alpha*T for alpha in [0,2]. Shares fixed points with T for
/// alpha != 0; averaged when T is nonexpansive and alpha in (0,1).
class RelaxedOperator final : public FixedPointOperator {
  public:
    RelaxedOperator(OperatorPtr base, double alpha);

    std::size_t dimension() const override { return base_->dimension(); }
    void apply(std::span<const double> x, std::span<double> out) const override;
    std::string describe() const override;

    double alpha() const { return alpha_; }
    const FixedPointOperator& base() const { return *base_; }

  private:
    OperatorPtr base_;
    double alpha_;
};

RelaxedOperator relax(OperatorPtr base, double alpha);

/// Result of sampling pairs (x,y) and measuring ||T(x)-T(y)|| / ||x-y||.
struct ProbeReport {
    double max_ratio = 0.0;
    int trials = 0;
    int violations = 0;     // ratio above 1 + tolerance
    double tolerance = 1e-10;
    bool passed() const { return violations == 0; }
};

/// Samples `trials` random pairs in a box around the origin and reports the
/// worst Lipschitz ratio. Deterministic given the seed.
ProbeReport nonexpansive_probe(const FixedPointOperator& op, int trials,
                               std::uint64_t seed, double scale = 10.0,
                               double tolerance = 1e-10);

} // namespace asi
