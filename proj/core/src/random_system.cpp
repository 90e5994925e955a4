#include "asi/random_system.hpp"

#include <algorithm>
#include <numeric>

#include "asi/rng.hpp"

namespace asi {

namespace {
constexpr int kRetryCap = 32;

SparseMatrix try_generate(const RandomSystemSpec& spec, std::uint64_t seed, bool& covered) {
    Rng rng(seed);
    std::vector<Triplet> entries;
    entries.reserve(spec.rows * spec.nnz_per_row);
    std::vector<std::size_t> cols(spec.cols);
    std::iota(cols.begin(), cols.end(), 0);
    std::vector<char> seen(spec.cols, 0);

    for (std::size_t r = 0; r < spec.rows; ++r) {
        // Partial Fisher-Yates draw of nnz_per_row distinct columns.
        for (std::size_t k = 0; k < spec.nnz_per_row; ++k) {
            const auto pick = static_cast<std::size_t>(
                rng.uniform_int(static_cast<std::int64_t>(k),
                                static_cast<std::int64_t>(spec.cols - 1)));
            std::swap(cols[k], cols[pick]);
            const double magnitude = 0.25 + 0.75 * rng.uniform01();
            const double value = rng.uniform01() < 0.5 ? -magnitude : magnitude;
            entries.push_back({r, cols[k], value});
            seen[cols[k]] = 1;
        }
    }
    covered = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    return SparseMatrix::from_triplets(spec.rows, spec.cols, std::move(entries));
}
} // namespace

TomographySystem make_random_system(const RandomSystemSpec& spec) {
    detail::require_param(spec.rows >= 1 && spec.cols >= 1,
                          "random system: dimensions must be positive");
    detail::require_param(spec.nnz_per_row >= 1 && spec.nnz_per_row <= spec.cols,
                          "random system: nnz per row must lie in [1, cols]");

    SparseMatrix a;
    bool covered = false;
    for (int attempt = 0; attempt < kRetryCap && !covered; ++attempt)
        a = try_generate(spec, spec.seed + 0x9e3779b97f4a7c15ULL * attempt, covered);
    if (!covered)
        throw InvalidParameter(
            "random system: sparsity pattern left columns empty after retries; "
            "increase nnz_per_row or rows");

    Rng rng(spec.seed ^ 0xa5a5a5a5a5a5a5a5ULL);
    Vector x_true(spec.cols);
    if (spec.solution == RandomSystemSpec::Solution::Normal)
        rng.fill_normal(x_true);
    else
        rng.fill_uniform(x_true, 0.0, 1.0);

    TomographySystem sys;
    sys.b = a.multiply(x_true);
    sys.A = std::move(a);
    sys.x_true = std::move(x_true);
    return sys;
}

} // namespace asi
