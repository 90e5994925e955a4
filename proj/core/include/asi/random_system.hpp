#pragma once

#include <cstdint>

#include "asi/projector.hpp"

namespace asi {

/// Seeded generator of consistent sparse systems: random supports, values
/// bounded away from zero, a drawn solution x*, and b = A x* computed from the
/// assembled matrix.
struct RandomSystemSpec {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t nnz_per_row = 1;
    std::uint64_t seed = 1;
    enum class Solution { Normal, Uniform01 } solution = Solution::Normal;
};

/// Deterministic per seed. If some column stays empty, regenerates with a
/// derived seed up to a retry cap before failing.
TomographySystem make_random_system(const RandomSystemSpec& spec);

} // namespace asi
