#include "asi/sparse.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace asi {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> entries) {
    detail::require_param(rows > 0 && cols > 0, "matrix dimensions must be positive");
    for (const Triplet& t : entries)
        detail::require(t.row < rows && t.col < cols, "triplet index out of range");

    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.offsets_.assign(rows + 1, 0);
    m.col_idx_.reserve(entries.size());
    m.values_.reserve(entries.size());

    std::size_t i = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        while (i < entries.size() && entries[i].row == r) {
            double v = entries[i].value;
            const std::size_t c = entries[i].col;
            ++i;
            while (i < entries.size() && entries[i].row == r && entries[i].col == c) {
                v += entries[i].value;  // duplicates accumulate
                ++i;
            }
            if (v != 0.0) {
                m.col_idx_.push_back(static_cast<std::int32_t>(c));
                m.values_.push_back(v);
            }
        }
        m.offsets_[r + 1] = m.values_.size();
    }
    m.rebuild_row_norms();
    return m;
}

void SparseMatrix::rebuild_row_norms() {
    row_norms_sq_.assign(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (std::size_t i = offsets_[r]; i < offsets_[r + 1]; ++i) s += values_[i] * values_[i];
        row_norms_sq_[r] = s;
    }
}

SparseMatrix::RowView SparseMatrix::row(std::size_t i) const {
    detail::require(i < rows_, "row index out of range");
    const std::size_t b = offsets_[i], e = offsets_[i + 1];
    return {std::span<const std::int32_t>(col_idx_).subspan(b, e - b),
            std::span<const double>(values_).subspan(b, e - b)};
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    detail::require(x.size() == cols_ && y.size() == rows_, "multiply: dimension mismatch");
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (std::size_t i = offsets_[r]; i < offsets_[r + 1]; ++i)
            s += values_[i] * x[static_cast<std::size_t>(col_idx_[i])];
        y[r] = s;
    }
}

Vector SparseMatrix::multiply(std::span<const double> x) const {
    Vector y(rows_);
    multiply(x, y);
    return y;
}

void SparseMatrix::add_transpose_multiply(double a, std::span<const double> r,
                                          std::span<double> y) const {
    detail::require(r.size() == rows_ && y.size() == cols_,
                    "add_transpose_multiply: dimension mismatch");
    for (std::size_t i = 0; i < rows_; ++i) {
        const double ri = a * r[i];
        if (ri == 0.0) continue;
        for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k)
            y[static_cast<std::size_t>(col_idx_[k])] += ri * values_[k];
    }
}

double SparseMatrix::residual_norm(std::span<const double> x,
                                   std::span<const double> b) const {
    detail::require(b.size() == rows_, "residual_norm: rhs dimension mismatch");
    detail::require(x.size() == cols_, "residual_norm: x dimension mismatch");
    double s = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        double ax = 0.0;
        for (std::size_t i = offsets_[r]; i < offsets_[r + 1]; ++i)
            ax += values_[i] * x[static_cast<std::size_t>(col_idx_[i])];
        const double d = ax - b[r];
        s += d * d;
    }
    return std::sqrt(s);
}

std::vector<std::size_t> SparseMatrix::zero_rows() const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < rows_; ++r)
        if (offsets_[r] == offsets_[r + 1]) out.push_back(r);
    return out;
}

std::vector<std::size_t> SparseMatrix::zero_cols() const {
    std::vector<char> seen(cols_, 0);
    for (std::int32_t c : col_idx_) seen[static_cast<std::size_t>(c)] = 1;
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!seen[c]) out.push_back(c);
    return out;
}

std::vector<std::size_t> SparseMatrix::col_counts() const {
    std::vector<std::size_t> counts(cols_, 0);
    for (std::int32_t c : col_idx_) ++counts[static_cast<std::size_t>(c)];
    return counts;
}

double SparseMatrix::row_norm_cache_drift() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (std::size_t i = offsets_[r]; i < offsets_[r + 1]; ++i) s += values_[i] * values_[i];
        if (s == 0.0 && row_norms_sq_[r] == 0.0) continue;
        const double denom = std::max(std::abs(s), std::abs(row_norms_sq_[r]));
        worst = std::max(worst, std::abs(s - row_norms_sq_[r]) / denom);
    }
    return worst;
}

SparseMatrix SparseMatrix::select_rows(std::span<const std::size_t> rows) const {
    SparseMatrix m;
    m.rows_ = rows.size();
    m.cols_ = cols_;
    m.offsets_.assign(rows.size() + 1, 0);
    std::size_t total = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        detail::require(rows[k] < rows_, "select_rows: row index out of range");
        total += offsets_[rows[k] + 1] - offsets_[rows[k]];
    }
    m.col_idx_.reserve(total);
    m.values_.reserve(total);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::size_t r = rows[k];
        for (std::size_t i = offsets_[r]; i < offsets_[r + 1]; ++i) {
            m.col_idx_.push_back(col_idx_[i]);
            m.values_.push_back(values_[i]);
        }
        m.offsets_[k + 1] = m.values_.size();
    }
    m.rebuild_row_norms();
    return m;
}

PruneResult prune_zero_rows_cols(const SparseMatrix& a) {
    PruneResult out;
    const auto dead_cols = a.zero_cols();
    std::vector<std::int32_t> col_map(a.cols(), -1);
    {
        std::size_t next = 0, d = 0;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (d < dead_cols.size() && dead_cols[d] == c) {
                ++d;
                continue;
            }
            col_map[c] = static_cast<std::int32_t>(next++);
            out.kept_cols.push_back(c);
        }
    }
    std::vector<Triplet> entries;
    entries.reserve(a.nnz());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto row = a.row(r);
        if (row.nnz() == 0) continue;
        out.kept_rows.push_back(r);
        const std::size_t new_r = out.kept_rows.size() - 1;
        for (std::size_t i = 0; i < row.nnz(); ++i)
            entries.push_back({new_r,
                               static_cast<std::size_t>(col_map[static_cast<std::size_t>(row.cols[i])]),
                               row.vals[i]});
    }
    detail::require(!out.kept_rows.empty() && !out.kept_cols.empty(),
                    "prune: matrix is entirely zero");
    out.matrix = SparseMatrix::from_triplets(out.kept_rows.size(), out.kept_cols.size(),
                                             std::move(entries));
    return out;
}

// --- Matrix Market -----------------------------------------------------------

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw IoError("empty file: " + path.string());
    {
        std::istringstream hs(line);
        std::string banner, object, format, field, symmetry;
        hs >> banner >> object >> format >> field >> symmetry;
        auto lower = [](std::string s) {
            for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            return s;
        };
        if (banner != "%%MatrixMarket" || lower(object) != "matrix" ||
            lower(format) != "coordinate" || lower(field) != "real" ||
            lower(symmetry) != "general")
            throw IoError("unsupported Matrix Market header in " + path.string() +
                          " (need: matrix coordinate real general)");
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::size_t rows = 0, cols = 0, nnz = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> rows >> cols >> nnz)) throw IoError("bad size line in " + path.string());
    }
    std::vector<Triplet> entries;
    entries.reserve(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
        std::size_t i = 0, j = 0;
        double v = 0.0;
        if (!(in >> i >> j >> v)) throw IoError("truncated entries in " + path.string());
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw IoError("entry index out of range in " + path.string());
        entries.push_back({i - 1, j - 1, v});
    }
    return SparseMatrix::from_triplets(rows, cols, std::move(entries));
}

void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& a) {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw IoError("cannot write " + path.string());
    std::fprintf(f, "%%%%MatrixMarket matrix coordinate real general\n");
    std::fprintf(f, "%zu %zu %zu\n", a.rows(), a.cols(), a.nnz());
    const auto offsets = a.row_offsets();
    const auto cols = a.col_indices();
    const auto vals = a.values();
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t i = offsets[r]; i < offsets[r + 1]; ++i)
            std::fprintf(f, "%zu %d %.17g\n", r + 1, cols[i] + 1, vals[i]);
    if (std::fclose(f) != 0) throw IoError("write failed: " + path.string());
}

// --- vectors -----------------------------------------------------------------

static bool is_text_vector(const std::filesystem::path& path) {
    return path.extension() == ".txt";
}

Vector read_vector(const std::filesystem::path& path) {
    if (is_text_vector(path)) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open " + path.string());
        Vector out;
        double v;
        while (in >> v) out.push_back(v);
        if (!in.eof()) throw IoError("malformed number in " + path.string());
        return out;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::size_t>(in.tellg());
    in.seekg(0);
    if (bytes % sizeof(double) != 0)
        throw IoError("binary vector has partial trailing value: " + path.string());
    Vector out(bytes / sizeof(double));
    in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw IoError("read failed: " + path.string());
    static_assert(std::endian::native == std::endian::little,
                  "binary vector files are little-endian");
    return out;
}

void write_vector(const std::filesystem::path& path, std::span<const double> x) {
    if (is_text_vector(path)) {
        std::FILE* f = std::fopen(path.string().c_str(), "w");
        if (!f) throw IoError("cannot write " + path.string());
        for (double v : x) std::fprintf(f, "%.17g\n", v);
        if (std::fclose(f) != 0) throw IoError("write failed: " + path.string());
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(x.data()),
              static_cast<std::streamsize>(x.size() * sizeof(double)));
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace asi
