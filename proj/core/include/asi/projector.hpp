#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "asi/engine.hpp"
#include "asi/phantom.hpp"
#include "asi/sparse.hpp"

namespace asi {

struct ProjectionGeometry {
    std::size_t image_side = 0;
    std::vector<double> angles_rad;
    std::size_t detector_count = 0;
    double detector_spacing = 0.0;  // grid units
};

/// A consistent linear system A x_true = b together with its provenance.
/// For projector-built systems, zero rays and unseen pixels have been pruned
/// and the kept_* maps point back at original ray/pixel indices.
struct TomographySystem {
    SparseMatrix A;
    Vector b;
    Vector x_true;
    ProjectionGeometry geometry;                    // zeroed for random systems
    std::vector<std::size_t> kept_rows, kept_cols;  // empty when nothing was pruned

    nlohmann::json descriptor() const;
    ProblemView view() const { return {&A, b, x_true}; }
};

/// Radians 0, pi/count, 2*pi/count, ... (half circle, the classic scan range).
std::vector<double> half_circle_angles(std::size_t count);

/// Parallel-beam line projector: one matrix row per (angle, detector) ray,
/// entries are the intersection lengths of the ray with each unit pixel of the
/// image grid. The right-hand side is A * x_true computed from the assembled
/// matrix, so the system is consistent by construction.
TomographySystem make_projector(const PhantomImage& image, std::span<const double> angles_rad,
                                std::size_t detector_count);

/// Row indices of a geometry ray inside the pruned system use kept_rows; this
/// helper rebuilds geometry row ids: (angle_index, detector_index) of an
/// original row.
std::pair<std::size_t, std::size_t> ray_of_row(const ProjectionGeometry& g,
                                               std::size_t original_row);

/// Writes A.mtx, b.txt, x_true.txt, geometry.json (and returns the paths used).
struct SystemPaths {
    std::filesystem::path matrix, rhs, solution, geometry;
};
SystemPaths save_system(const std::filesystem::path& dir, const TomographySystem& system);

TomographySystem load_system(const std::filesystem::path& matrix_path,
                             const std::filesystem::path& rhs_path,
                             const std::optional<std::filesystem::path>& solution_path);

} // namespace asi
