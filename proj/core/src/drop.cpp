#include "asi/drop.hpp"

#include <cmath>

#include "asi/rng.hpp"

namespace asi {

DropBlockOperator::DropBlockOperator(const SparseMatrix& a, std::span<const double> b,
                                     std::span<const std::size_t> block_rows,
                                     bool global_col_counts)
    : dim_(a.cols()), rows_(block_rows.begin(), block_rows.end()) {
    detail::require_param(!rows_.empty(), "drop block: empty row set");
    detail::require(b.size() == a.rows(), "drop block: rhs size mismatch");

    sub_ = a.select_rows(rows_);
    b_.reserve(rows_.size());
    w_.reserve(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        b_.push_back(b[rows_[i]]);
        const double ns = sub_.row_norm_sq(i);
        detail::require_param(ns > 0.0, "drop block: zero row");
        w_.push_back(1.0 / ns);
    }

    std::vector<std::size_t> counts =
        global_col_counts ? a.col_counts() : sub_.col_counts();
    d_.assign(dim_, 0.0);
    for (std::size_t j = 0; j < dim_; ++j)
        if (counts[j] > 0) d_[j] = 1.0 / static_cast<double>(counts[j]);

    const auto sub_counts = global_col_counts ? sub_.col_counts() : counts;
    for (std::size_t j = 0; j < dim_; ++j)
        if (sub_counts[j] > 0) support_.push_back(static_cast<std::int32_t>(j));

    const auto cols = sub_.col_indices();
    const auto vals = sub_.values();
    vals_d_.resize(vals.size());
    vals_sqrt_d_.resize(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double dj = d_[static_cast<std::size_t>(cols[i])];
        vals_d_[i] = vals[i] * dj;
        vals_sqrt_d_[i] = vals[i] * std::sqrt(dj);
    }
}

void DropBlockOperator::apply_x(std::span<const double> x, std::span<double> out) const {
    detail::require(x.size() == dim_ && out.size() == dim_, "drop: dimension mismatch");
    for (std::size_t j = 0; j < dim_; ++j) out[j] = x[j];
    const auto offsets = sub_.row_offsets();
    const auto cols = sub_.col_indices();
    const auto vals = sub_.values();
    for (std::size_t i = 0; i < sub_.rows(); ++i) {
        double r = -b_[i];
        for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
            r += vals[k] * x[static_cast<std::size_t>(cols[k])];
        const double f = w_[i] * r;
        for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
            out[static_cast<std::size_t>(cols[k])] -= vals_d_[k] * f;
    }
}

void DropBlockOperator::apply_y(std::span<const double> y, std::span<double> out) const {
    detail::require(y.size() == dim_ && out.size() == dim_, "drop: dimension mismatch");
    for (std::size_t j = 0; j < dim_; ++j) out[j] = y[j];
    const auto offsets = sub_.row_offsets();
    const auto cols = sub_.col_indices();
    for (std::size_t i = 0; i < sub_.rows(); ++i) {
        double r = -b_[i];
        for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
            r += vals_sqrt_d_[k] * y[static_cast<std::size_t>(cols[k])];
        const double f = w_[i] * r;
        for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
            out[static_cast<std::size_t>(cols[k])] -= vals_sqrt_d_[k] * f;
    }
}

void DropBlockOperator::residual_x_into(std::span<const double> x,
                                        std::span<double> out) const {
    detail::require(x.size() == dim_ && out.size() == dim_, "drop: dimension mismatch");
    for (std::size_t j = 0; j < dim_; ++j) out[j] = 0.0;
    const auto offsets = sub_.row_offsets();
    const auto cols = sub_.col_indices();
    const auto vals = sub_.values();
    for (std::size_t i = 0; i < sub_.rows(); ++i) {
        double r = -b_[i];
        for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
            r += vals[k] * x[static_cast<std::size_t>(cols[k])];
        const double f = w_[i] * r;
        for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
            out[static_cast<std::size_t>(cols[k])] += vals_d_[k] * f;
    }
}

Vector DropBlockOperator::residual_update(std::span<const double> x, double lambda) const {
    detail::require_param(lambda > 0.0 && lambda <= 1.0,
                          "drop residual update: lambda must lie in (0,1]");
    Vector s(dim_);
    residual_x_into(x, s);
    Vector out(x.begin(), x.end());
    axpy(-lambda, s, out);
    return out;
}

void DropBlockOperator::apply_normal(std::span<const double> v, std::span<double> out) const {
    detail::require(v.size() == dim_ && out.size() == dim_, "drop: dimension mismatch");
    for (std::size_t j = 0; j < dim_; ++j) out[j] = 0.0;
    const auto offsets = sub_.row_offsets();
    const auto cols = sub_.col_indices();
    for (std::size_t i = 0; i < sub_.rows(); ++i) {
        double r = 0.0;
        for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
            r += vals_sqrt_d_[k] * v[static_cast<std::size_t>(cols[k])];
        const double f = w_[i] * r;
        for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
            out[static_cast<std::size_t>(cols[k])] += vals_sqrt_d_[k] * f;
    }
}

Vector drop_apply(const DropBlockOperator& block, std::span<const double> y) {
    Vector out(block.dimension());
    block.apply_y(y, out);
    return out;
}

Vector drop_residual_update(const DropBlockOperator& block, std::span<const double> x,
                            double lambda) {
    return block.residual_update(x, lambda);
}

Vector drop_componentwise_reference(const SparseMatrix& a, std::span<const double> b,
                                    std::span<const double> x) {
    detail::require(b.size() == a.rows() && x.size() == a.cols(),
                    "drop reference: dimension mismatch");
    const auto counts = a.col_counts();
    Vector g(a.cols(), 0.0);
    const auto offsets = a.row_offsets();
    const auto cols = a.col_indices();
    const auto vals = a.values();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double r = -b[i];
        for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
            r += vals[k] * x[static_cast<std::size_t>(cols[k])];
        detail::require(a.row_norm_sq(i) > 0.0, "drop reference: zero row");
        const double f = r / a.row_norm_sq(i);
        for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
            g[static_cast<std::size_t>(cols[k])] += vals[k] * f;
    }
    Vector out(x.begin(), x.end());
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (counts[j] > 0) out[j] -= g[j] / static_cast<double>(counts[j]);
    return out;
}

namespace {

/// Largest eigenvalue of a small symmetric matrix via cyclic Jacobi sweeps.
double jacobi_max_eigenvalue(std::vector<double>& g, std::size_t s) {
    auto at = [&](std::size_t i, std::size_t j) -> double& { return g[i * s + j]; };
    for (int sweep = 0; sweep < 40; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < s; ++p)
            for (std::size_t q = p + 1; q < s; ++q) off += at(p, q) * at(p, q);
        if (off <= 1e-30) break;
        for (std::size_t p = 0; p < s; ++p)
            for (std::size_t q = p + 1; q < s; ++q) {
                if (at(p, q) == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < s; ++k) {
                    const double gkp = at(k, p), gkq = at(k, q);
                    at(k, p) = c * gkp - sn * gkq;
                    at(k, q) = sn * gkp + c * gkq;
                }
                for (std::size_t k = 0; k < s; ++k) {
                    const double gpk = at(p, k), gqk = at(q, k);
                    at(p, k) = c * gpk - sn * gqk;
                    at(q, k) = sn * gpk + c * gqk;
                }
            }
    }
    double best = at(0, 0);
    for (std::size_t i = 1; i < s; ++i) best = std::max(best, at(i, i));
    return best;
}

/// Modified Gram-Schmidt, two passes. A column that collapses during
/// orthogonalization is linearly dependent on the ones before it; it is
/// zeroed out rather than normalized, since normalized cancellation noise
/// would not be orthogonal and would corrupt the Ritz values.
void orthonormalize(std::vector<Vector>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double original = norm(v[i]);
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < i; ++j) axpy(-dot(v[j], v[i]), v[j], v[i]);
        const double nv = norm(v[i]);
        if (nv <= 1e-8 * original || nv == 0.0) {
            for (double& c : v[i]) c = 0.0;
            continue;
        }
        for (double& c : v[i]) c /= nv;
    }
}

} // namespace

SpectralCertificate spectral_certificate(const DropBlockOperator& block,
                                         int max_iterations, double tolerance,
                                         std::uint64_t seed) {
    detail::require_param(max_iterations >= 1, "spectral certificate: iterations >= 1");
    const std::size_t n = block.dimension();
    // Blocked power iteration: a small subspace rides through H so clustered
    // top eigenvalues cannot stall the estimate the way a single vector does.
    const std::size_t s = std::min<std::size_t>(n, 8);

    Rng rng(seed);
    std::vector<Vector> v(s, Vector(n));
    for (auto& col : v) rng.fill_uniform(col, -1.0, 1.0);
    orthonormalize(v);

    std::vector<Vector> w(s, Vector(n));
    std::vector<double> gram(s * s);
    SpectralCertificate cert;
    double prev = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        for (std::size_t i = 0; i < s; ++i) block.apply_normal(v[i], w[i]);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) gram[i * s + j] = dot(v[i], w[j]);
        for (std::size_t i = 0; i < s; ++i)  // symmetrize rounding noise away
            for (std::size_t j = i + 1; j < s; ++j) {
                const double m = 0.5 * (gram[i * s + j] + gram[j * s + i]);
                gram[i * s + j] = gram[j * s + i] = m;
            }
        const double rho = jacobi_max_eigenvalue(gram, s);
        cert.rho = rho;
        cert.iterations = it;
        if (it > 1 && std::abs(rho - prev) <= tolerance * std::max(1.0, std::abs(rho))) {
            cert.converged = true;
            return cert;
        }
        prev = rho;
        std::swap(v, w);
        orthonormalize(v);
    }
    return cert;  // converged stays false: certificate unavailable, not fatal
}

DropFamily make_drop_family(const SparseMatrix& a, std::span<const double> b,
                            const BlockPartition& partition, bool global_col_counts) {
    partition.validate();
    detail::require(partition.row_count == a.rows(), "drop family: partition/matrix mismatch");
    DropFamily fam;
    fam.blocks.reserve(partition.block_count());
    fam.solver_ops.reserve(partition.block_count());
    for (const auto& rows : partition.blocks) {
        auto block = std::make_shared<const DropBlockOperator>(a, b, rows, global_col_counts);
        fam.blocks.push_back(block);
        fam.solver_ops.push_back(std::make_shared<DropXOperator>(block));
    }
    return fam;
}

} // namespace asi
