#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "asi/blocks.hpp"
#include "asi/operator.hpp"
#include "asi/sparse.hpp"

namespace asi {

/// Diagonally relaxed orthogonal projection operator for one row block.
///
/// For block rows A_t and right-hand side b_t, with W = diag(1/||a^i||^2) and
/// D = diag(1/s_j) where s_j counts the nonzeros of column j,
///
///   x-update (solver form):  T(x) = x - D A_t^T W (A_t x - b_t)
///   y-update (scaled form):  U(y) = y - B^T W (B y - b_t),  B = A_t D^{1/2}
///
/// U is nonexpansive in the Euclidean norm; T is its image under y = D^{-1/2} x
/// and is the form the block solver iterates. Columns empty within the block
/// get D entry 0, so both maps leave coordinates the block cannot see alone.
class DropBlockOperator {
  public:
    /// `global_col_counts` switches s_j from per-block counts (the default) to
    /// counts over the whole matrix.
    DropBlockOperator(const SparseMatrix& a, std::span<const double> b,
                      std::span<const std::size_t> block_rows,
                      bool global_col_counts = false);

    std::size_t dimension() const { return dim_; }
    std::size_t block_size() const { return sub_.rows(); }
    std::span<const std::size_t> block_rows() const { return rows_; }
    std::span<const double> col_weights() const { return d_; }
    std::span<const double> row_weights() const { return w_; }

    /// T(x); x and out must not alias.
    void apply_x(std::span<const double> x, std::span<double> out) const;

    /// U(y); y and out must not alias.
    void apply_y(std::span<const double> y, std::span<double> out) const;

    /// S(x) = D A_t^T W (A_t x - b_t), dense.
    void residual_x_into(std::span<const double> x, std::span<double> out) const;

    /// x - lambda * S(x) for lambda in (0, 1].
    Vector residual_update(std::span<const double> x, double lambda) const;

    /// v -> B^T W B v, the symmetric map whose spectral radius certifies
    /// nonexpansiveness. Same spectrum as D A_t^T W A_t.
    void apply_normal(std::span<const double> v, std::span<double> out) const;

  private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> rows_;
    SparseMatrix sub_;               // block rows, original column space
    std::vector<double> b_;
    std::vector<double> w_;          // per block row
    std::vector<double> d_;          // per column; 0 where the block has no entry
    std::vector<double> vals_d_;     // a_ij * d_j
    std::vector<double> vals_sqrt_d_; // a_ij * sqrt(d_j)
    std::vector<std::int32_t> support_; // columns with d_j > 0
};

/// U(y) for one block (the provably nonexpansive map).
Vector drop_apply(const DropBlockOperator& block, std::span<const double> y);

/// x - lambda * D A_t^T W (A_t x - b_t).
Vector drop_residual_update(const DropBlockOperator& block, std::span<const double> x,
                            double lambda);

/// Whole-matrix single-block reference update with unit step:
/// x_j - (1/s_j) sum_i ((<a^i,x> - b_i)/||a^i||^2) a^i_j.
Vector drop_componentwise_reference(const SparseMatrix& a, std::span<const double> b,
                                    std::span<const double> x);

struct SpectralCertificate {
    double rho = 0.0;    // power-iteration estimate of the spectral radius
    bool converged = false;
    int iterations = 0;
};

/// Power iteration on B^T W B with a seeded start vector. A non-converged
/// certificate is reported, not thrown.
SpectralCertificate spectral_certificate(const DropBlockOperator& block,
                                         int max_iterations = 500,
                                         double tolerance = 1e-10,
                                         std::uint64_t seed = 0x5eed5eedULL);

/// Engine adapter for the x-space update.
class DropXOperator final : public FixedPointOperator {
  public:
    explicit DropXOperator(std::shared_ptr<const DropBlockOperator> block)
        : block_(std::move(block)) {}
    std::size_t dimension() const override { return block_->dimension(); }
    void apply(std::span<const double> x, std::span<double> out) const override {
        block_->apply_x(x, out);
    }
    std::string describe() const override { return "drop block (x-space)"; }
    const DropBlockOperator& block() const { return *block_; }

  private:
    std::shared_ptr<const DropBlockOperator> block_;
};

/// Probe adapter for the scaled-variable update.
class DropYOperator final : public FixedPointOperator {
  public:
    explicit DropYOperator(std::shared_ptr<const DropBlockOperator> block)
        : block_(std::move(block)) {}
    std::size_t dimension() const override { return block_->dimension(); }
    void apply(std::span<const double> y, std::span<double> out) const override {
        block_->apply_y(y, out);
    }
    std::string describe() const override { return "drop block (scaled)"; }

  private:
    std::shared_ptr<const DropBlockOperator> block_;
};

struct DropFamily {
    std::vector<std::shared_ptr<const DropBlockOperator>> blocks;
    std::vector<OperatorPtr> solver_ops;  // x-space maps, one per block
};

DropFamily make_drop_family(const SparseMatrix& a, std::span<const double> b,
                            const BlockPartition& partition,
                            bool global_col_counts = false);

} // namespace asi
