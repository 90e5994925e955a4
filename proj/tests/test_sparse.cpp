#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "asi/rng.hpp"
#include "asi/sparse.hpp"

using namespace asi;
namespace fs = std::filesystem;

namespace {
fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "asikit_sparse_test";
    fs::create_directories(dir);
    return dir;
}
} // namespace

TEST_CASE("triplet construction sums duplicates and drops zeros") {
    auto m = SparseMatrix::from_triplets(
        2, 3, {{0, 1, 2.0}, {0, 1, 3.0}, {1, 0, 1.5}, {1, 2, 4.0}, {1, 2, -4.0}});
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m.nnz() == 2);  // (0,1)=5, (1,0)=1.5; (1,2) cancelled
    auto r0 = m.row(0);
    REQUIRE(r0.nnz() == 1);
    CHECK(r0.cols[0] == 1);
    CHECK(r0.vals[0] == 5.0);
    CHECK(m.row_norm_sq(0) == 25.0);
    CHECK(m.row_norm_sq(1) == doctest::Approx(2.25));
}

TEST_CASE("multiply matches a dense oracle") {
    Rng rng(42);
    const std::size_t rows = 17, cols = 11;
    std::vector<Triplet> entries;
    std::vector<std::vector<double>> dense(rows, std::vector<double>(cols, 0.0));
    for (std::size_t r = 0; r < rows; ++r)
        for (int k = 0; k < 4; ++k) {
            const auto c = static_cast<std::size_t>(rng.uniform_int(0, cols - 1));
            const double v = rng.uniform(-2.0, 2.0);
            entries.push_back({r, c, v});
            dense[r][c] += v;
        }
    auto m = SparseMatrix::from_triplets(rows, cols, entries);

    Vector x(cols);
    rng.fill_normal(x);
    Vector y = m.multiply(x);
    for (std::size_t r = 0; r < rows; ++r) {
        double expect = 0.0;
        for (std::size_t c = 0; c < cols; ++c) expect += dense[r][c] * x[c];
        CHECK(y[r] == doctest::Approx(expect).epsilon(1e-13));
    }

    SUBCASE("transpose multiply against the same oracle") {
        Vector r(rows);
        rng.fill_normal(r);
        Vector g(cols, 0.0);
        m.add_transpose_multiply(0.5, r, g);
        for (std::size_t c = 0; c < cols; ++c) {
            double expect = 0.0;
            for (std::size_t row = 0; row < rows; ++row) expect += 0.5 * dense[row][c] * r[row];
            CHECK(g[c] == doctest::Approx(expect).epsilon(1e-13));
        }
    }
}

TEST_CASE("row norm cache matches recomputation tightly") {
    Rng rng(7);
    std::vector<Triplet> entries;
    for (std::size_t r = 0; r < 40; ++r)
        for (int k = 0; k < 6; ++k)
            entries.push_back({r, static_cast<std::size_t>(rng.uniform_int(0, 29)),
                               rng.uniform(-1.0, 1.0)});
    auto m = SparseMatrix::from_triplets(40, 30, entries);
    CHECK(m.row_norm_cache_drift() <= 1e-14);
}

TEST_CASE("zero row/col reporting and pruning") {
    auto m = SparseMatrix::from_triplets(3, 4, {{0, 0, 1.0}, {2, 2, 2.0}});
    CHECK(m.zero_rows() == std::vector<std::size_t>{1});
    CHECK(m.zero_cols() == std::vector<std::size_t>{1, 3});

    auto pruned = prune_zero_rows_cols(m);
    CHECK(pruned.matrix.rows() == 2);
    CHECK(pruned.matrix.cols() == 2);
    CHECK(pruned.kept_rows == std::vector<std::size_t>{0, 2});
    CHECK(pruned.kept_cols == std::vector<std::size_t>{0, 2});
    CHECK(pruned.matrix.row(1).vals[0] == 2.0);
    CHECK(pruned.matrix.zero_rows().empty());
    CHECK(pruned.matrix.zero_cols().empty());
}

TEST_CASE("matrix market round trip is lossless") {
    Rng rng(99);
    std::vector<Triplet> entries;
    for (std::size_t r = 0; r < 12; ++r)
        for (int k = 0; k < 3; ++k)
            entries.push_back({r, static_cast<std::size_t>(rng.uniform_int(0, 9)),
                               rng.normal()});
    auto m = SparseMatrix::from_triplets(12, 10, entries);

    const auto path = temp_dir() / "round_trip.mtx";
    write_matrix_market(path, m);
    auto back = read_matrix_market(path);

    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    REQUIRE(back.nnz() == m.nnz());
    for (std::size_t i = 0; i < m.nnz(); ++i) {
        CHECK(back.values()[i] == m.values()[i]);  // %.17g preserves doubles
        CHECK(back.col_indices()[i] == m.col_indices()[i]);
    }
}

TEST_CASE("matrix market rejects unsupported headers") {
    const auto path = temp_dir() / "bad_header.mtx";
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    std::fprintf(f, "%%%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 2.0 0.0\n");
    std::fclose(f);
    CHECK_THROWS_AS(read_matrix_market(path), IoError);
}

TEST_CASE("vector files round trip in both encodings") {
    Rng rng(3);
    Vector x(37);
    rng.fill_normal(x);
    for (const char* name : {"v.txt", "v.f64"}) {
        const auto path = temp_dir() / name;
        write_vector(path, x);
        auto back = read_vector(path);
        REQUIRE(back.size() == x.size());
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == x[i]);
    }
}

TEST_CASE("select_rows keeps values and recomputes norms") {
    auto m = SparseMatrix::from_triplets(
        3, 3, {{0, 0, 1.0}, {1, 1, 2.0}, {2, 0, 3.0}, {2, 2, 4.0}});
    const std::size_t rows[] = {2, 0};
    auto sub = m.select_rows(rows);
    CHECK(sub.rows() == 2);
    CHECK(sub.row_norm_sq(0) == 25.0);
    CHECK(sub.row_norm_sq(1) == 1.0);
    CHECK(sub.row(0).cols[0] == 0);
    CHECK(sub.row(0).cols[1] == 2);
}
