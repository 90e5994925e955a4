#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "asi/vec.hpp"

namespace asi {

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
};

/// Compressed sparse row matrix with cached squared row norms.
///
/// Rows are stored with strictly increasing column indices; duplicate entries
/// are summed and exact zeros dropped at construction. Immutable afterwards.
class SparseMatrix {
  public:
    SparseMatrix() = default;

    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                      std::vector<Triplet> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return values_.size(); }

    std::span<const std::size_t> row_offsets() const { return offsets_; }
    std::span<const std::int32_t> col_indices() const { return col_idx_; }
    std::span<const double> values() const { return values_; }

    struct RowView {
        std::span<const std::int32_t> cols;
        std::span<const double> vals;
        std::size_t nnz() const { return vals.size(); }
    };
    RowView row(std::size_t i) const;

    double row_norm_sq(std::size_t i) const { return row_norms_sq_[i]; }
    std::span<const double> row_norms_sq() const { return row_norms_sq_; }

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    Vector multiply(std::span<const double> x) const;

    /// y += a * A^T r
    void add_transpose_multiply(double a, std::span<const double> r,
                                std::span<double> y) const;

    /// ||A x - b||
    double residual_norm(std::span<const double> x, std::span<const double> b) const;

    std::vector<std::size_t> zero_rows() const;
    std::vector<std::size_t> zero_cols() const;

    /// Number of structural nonzeros in each column.
    std::vector<std::size_t> col_counts() const;

    /// Largest relative deviation between the cached squared row norms and a
    /// fresh recomputation. Zero rows are skipped.
    double row_norm_cache_drift() const;

    /// New matrix made of the selected rows (kept in the given order); the
    /// column space is unchanged.
    SparseMatrix select_rows(std::span<const std::size_t> rows) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> offsets_;   // rows_ + 1
    std::vector<std::int32_t> col_idx_;
    std::vector<double> values_;
    std::vector<double> row_norms_sq_;

    void rebuild_row_norms();
};

struct PruneResult {
    SparseMatrix matrix;
    std::vector<std::size_t> kept_rows;  // original indices of surviving rows
    std::vector<std::size_t> kept_cols;
};

/// Removes structurally empty rows and columns, remapping column indices.
PruneResult prune_zero_rows_cols(const SparseMatrix& a);

// --- file formats ------------------------------------------------------------

/// Matrix Market "coordinate real general", 1-based indices.
SparseMatrix read_matrix_market(const std::filesystem::path& path);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a);

/// Vectors: ".txt" holds one decimal number per line; any other extension is
/// raw little-endian IEEE-754 doubles.
Vector read_vector(const std::filesystem::path& path);
void write_vector(const std::filesystem::path& path, std::span<const double> x);

} // namespace asi
