#pragma once

#include <cstdint>
#include <vector>

#include "asi/operator.hpp"
#include "asi/sparse.hpp"

namespace asi {

/// The set { x : <a,x> = rhs } for a sparse nonzero row a, with the squared
/// row norm cached. Projection and residual touch only the row's support.
class Hyperplane {
  public:
    Hyperplane(std::size_t dim, std::vector<std::int32_t> cols, std::vector<double> vals,
               double rhs);

    static Hyperplane from_dense(std::span<const double> a, double rhs);
    static Hyperplane from_row(const SparseMatrix& m, std::size_t row, double rhs);

    std::size_t dimension() const { return dim_; }
    double rhs() const { return rhs_; }
    double norm_sq() const { return norm_sq_; }
    std::span<const std::int32_t> cols() const { return cols_; }
    std::span<const double> vals() const { return vals_; }

    double inner(std::span<const double> x) const;

    /// (<a,x> - rhs) / ||a||^2; the Kaczmarz residual is this factor times a.
    double residual_coefficient(std::span<const double> x) const;

    /// y += c * a over the row support only.
    void add_scaled(double c, std::span<double> y) const;

    /// out = x + ((rhs - <a,x>) / ||a||^2) * a
    void project_into(std::span<const double> x, std::span<double> out) const;
    Vector project(std::span<const double> x) const;

    /// The projection step restricted to the row support: values v_i with
    /// P(x)_{cols[i]} = x_{cols[i]} + v_i, bitwise the same update that
    /// project_into applies.
    void projection_delta(std::span<const double> x, std::span<double> out) const;

    /// x - P(x) as a dense vector; zero exactly on the hyperplane.
    Vector kaczmarz_residual(std::span<const double> x) const;

  private:
    std::size_t dim_;
    std::vector<std::int32_t> cols_;
    std::vector<double> vals_;
    double rhs_;
    double norm_sq_;
};

class HyperplaneProjector final : public SparseResidualOperator {
  public:
    explicit HyperplaneProjector(Hyperplane h) : h_(std::move(h)) {}
    std::size_t dimension() const override { return h_.dimension(); }
    void apply(std::span<const double> x, std::span<double> out) const override {
        h_.project_into(x, out);
    }
    std::span<const std::int32_t> delta_support() const override { return h_.cols(); }
    void delta_values(std::span<const double> x, std::span<double> out) const override {
        h_.projection_delta(x, out);
    }
    std::string describe() const override { return "hyperplane projection"; }
    const Hyperplane& hyperplane() const { return h_; }

  private:
    Hyperplane h_;
};

/// One projection operator per row of A; the row-action (ART) family.
std::vector<OperatorPtr> make_row_projectors(const SparseMatrix& a,
                                             std::span<const double> b);

} // namespace asi
