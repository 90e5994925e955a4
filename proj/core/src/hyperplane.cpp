#include "asi/hyperplane.hpp"

namespace asi {

Hyperplane::Hyperplane(std::size_t dim, std::vector<std::int32_t> cols,
                       std::vector<double> vals, double rhs)
    : dim_(dim), cols_(std::move(cols)), vals_(std::move(vals)), rhs_(rhs) {
    detail::require(cols_.size() == vals_.size(), "hyperplane: ragged row storage");
    for (std::int32_t c : cols_)
        detail::require(c >= 0 && static_cast<std::size_t>(c) < dim_,
                        "hyperplane: column index out of range");
    norm_sq_ = asi::norm_sq(vals_);
    detail::require_param(norm_sq_ > 0.0, "hyperplane: zero row");
}

Hyperplane Hyperplane::from_dense(std::span<const double> a, double rhs) {
    std::vector<std::int32_t> cols;
    std::vector<double> vals;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] != 0.0) {
            cols.push_back(static_cast<std::int32_t>(j));
            vals.push_back(a[j]);
        }
    }
    return Hyperplane(a.size(), std::move(cols), std::move(vals), rhs);
}

Hyperplane Hyperplane::from_row(const SparseMatrix& m, std::size_t row, double rhs) {
    const auto r = m.row(row);
    return Hyperplane(m.cols(), {r.cols.begin(), r.cols.end()},
                      {r.vals.begin(), r.vals.end()}, rhs);
}

double Hyperplane::inner(std::span<const double> x) const {
    detail::require(x.size() == dim_, "hyperplane: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < cols_.size(); ++i)
        s += vals_[i] * x[static_cast<std::size_t>(cols_[i])];
    return s;
}

double Hyperplane::residual_coefficient(std::span<const double> x) const {
    return (inner(x) - rhs_) / norm_sq_;
}

void Hyperplane::add_scaled(double c, std::span<double> y) const {
    detail::require(y.size() == dim_, "hyperplane: dimension mismatch");
    for (std::size_t i = 0; i < cols_.size(); ++i)
        y[static_cast<std::size_t>(cols_[i])] += c * vals_[i];
}

void Hyperplane::project_into(std::span<const double> x, std::span<double> out) const {
    detail::require(x.size() == dim_ && out.size() == dim_,
                    "hyperplane: dimension mismatch");
    const double c = (rhs_ - inner(x)) / norm_sq_;
    for (std::size_t j = 0; j < dim_; ++j) out[j] = x[j];
    add_scaled(c, out);
}

Vector Hyperplane::project(std::span<const double> x) const {
    Vector out(dim_);
    project_into(x, out);
    return out;
}

void Hyperplane::projection_delta(std::span<const double> x, std::span<double> out) const {
    detail::require(out.size() == cols_.size(), "hyperplane: delta size mismatch");
    const double c = (rhs_ - inner(x)) / norm_sq_;
    for (std::size_t i = 0; i < cols_.size(); ++i) out[i] = c * vals_[i];
}

Vector Hyperplane::kaczmarz_residual(std::span<const double> x) const {
    Vector out(dim_, 0.0);
    add_scaled(residual_coefficient(x), out);
    return out;
}

std::vector<OperatorPtr> make_row_projectors(const SparseMatrix& a,
                                             std::span<const double> b) {
    detail::require(b.size() == a.rows(), "make_row_projectors: rhs size mismatch");
    std::vector<OperatorPtr> ops;
    ops.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        ops.push_back(std::make_shared<HyperplaneProjector>(Hyperplane::from_row(a, i, b[i])));
    return ops;
}

} // namespace asi
