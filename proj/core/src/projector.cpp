#include "asi/projector.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace asi {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTiny = 1e-12;
} // namespace

std::vector<double> half_circle_angles(std::size_t count) {
    detail::require_param(count >= 1, "angles: need at least one");
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = kPi * static_cast<double>(i) / static_cast<double>(count);
    return out;
}

nlohmann::json TomographySystem::descriptor() const {
    nlohmann::json j;
    j["rows"] = A.rows();
    j["cols"] = A.cols();
    j["nnz"] = A.nnz();
    j["image_side"] = geometry.image_side;
    j["angles_rad"] = geometry.angles_rad;
    j["detector_count"] = geometry.detector_count;
    j["detector_spacing"] = geometry.detector_spacing;
    j["kept_rows"] = kept_rows;
    j["kept_cols"] = kept_cols;
    return j;
}

TomographySystem make_projector(const PhantomImage& image,
                                std::span<const double> angles_rad,
                                std::size_t detector_count) {
    detail::require_param(!angles_rad.empty(), "projector: need at least one angle");
    detail::require_param(detector_count >= 1, "projector: need at least one detector");

    const std::size_t n = image.side;
    const double nd = static_cast<double>(n);
    const double spacing = nd * std::sqrt(2.0) / static_cast<double>(detector_count);
    const double cx = nd / 2.0, cy = nd / 2.0;

    std::vector<Triplet> entries;
    std::vector<double> crossings;
    crossings.reserve(4 * n);

    for (std::size_t ai = 0; ai < angles_rad.size(); ++ai) {
        const double ux = std::cos(angles_rad[ai]);
        const double uy = std::sin(angles_rad[ai]);
        for (std::size_t d = 0; d < detector_count; ++d) {
            const double offset =
                (static_cast<double>(d) + 0.5 - static_cast<double>(detector_count) / 2.0) *
                spacing;
            const double px = cx - offset * uy;  // point on the ray
            const double py = cy + offset * ux;

            // Clip the line p + t*u against the grid [0,n]^2.
            double tmin = -std::numeric_limits<double>::infinity();
            double tmax = std::numeric_limits<double>::infinity();
            bool miss = false;
            const double pos[2] = {px, py};
            const double dir[2] = {ux, uy};
            for (int axis = 0; axis < 2 && !miss; ++axis) {
                if (std::abs(dir[axis]) < kTiny) {
                    if (pos[axis] < 0.0 || pos[axis] > nd) miss = true;
                } else {
                    double t0 = (0.0 - pos[axis]) / dir[axis];
                    double t1 = (nd - pos[axis]) / dir[axis];
                    if (t0 > t1) std::swap(t0, t1);
                    tmin = std::max(tmin, t0);
                    tmax = std::min(tmax, t1);
                }
            }
            if (miss || !(tmax - tmin > kTiny)) continue;

            crossings.clear();
            crossings.push_back(tmin);
            crossings.push_back(tmax);
            for (int axis = 0; axis < 2; ++axis) {
                if (std::abs(dir[axis]) < kTiny) continue;
                for (std::size_t g = 0; g <= n; ++g) {
                    const double t = (static_cast<double>(g) - pos[axis]) / dir[axis];
                    if (t > tmin + kTiny && t < tmax - kTiny) crossings.push_back(t);
                }
            }
            std::sort(crossings.begin(), crossings.end());

            const std::size_t ray = ai * detector_count + d;
            for (std::size_t s = 0; s + 1 < crossings.size(); ++s) {
                const double len = crossings[s + 1] - crossings[s];
                if (len <= kTiny) continue;
                const double tm = 0.5 * (crossings[s] + crossings[s + 1]);
                const double xm = px + tm * ux;
                const double ym = py + tm * uy;
                const auto col = static_cast<std::size_t>(
                    std::clamp(std::floor(xm), 0.0, nd - 1.0));
                const auto grow = static_cast<std::size_t>(
                    std::clamp(std::floor(ym), 0.0, nd - 1.0));
                const std::size_t row_img = n - 1 - grow;  // image row 0 is on top
                entries.push_back({ray, row_img * n + col, len});
            }
        }
    }
    detail::require_param(!entries.empty(), "projector: no ray meets the image grid");

    const std::size_t total_rays = angles_rad.size() * detector_count;
    SparseMatrix full = SparseMatrix::from_triplets(total_rays, n * n, std::move(entries));
    Vector b_full = full.multiply(image.values);

    PruneResult pruned = prune_zero_rows_cols(full);

    TomographySystem sys;
    sys.A = std::move(pruned.matrix);
    sys.kept_rows = std::move(pruned.kept_rows);
    sys.kept_cols = std::move(pruned.kept_cols);
    sys.b.reserve(sys.kept_rows.size());
    for (std::size_t r : sys.kept_rows) sys.b.push_back(b_full[r]);
    sys.x_true.reserve(sys.kept_cols.size());
    for (std::size_t c : sys.kept_cols) sys.x_true.push_back(image.values[c]);
    sys.geometry.image_side = n;
    sys.geometry.angles_rad.assign(angles_rad.begin(), angles_rad.end());
    sys.geometry.detector_count = detector_count;
    sys.geometry.detector_spacing = spacing;
    return sys;
}

std::pair<std::size_t, std::size_t> ray_of_row(const ProjectionGeometry& g,
                                               std::size_t original_row) {
    detail::require(g.detector_count > 0, "geometry: no detectors");
    return {original_row / g.detector_count, original_row % g.detector_count};
}

SystemPaths save_system(const std::filesystem::path& dir, const TomographySystem& system) {
    std::filesystem::create_directories(dir);
    SystemPaths paths{dir / "A.mtx", dir / "b.txt", dir / "x_true.txt",
                      dir / "geometry.json"};
    write_matrix_market(paths.matrix, system.A);
    write_vector(paths.rhs, system.b);
    write_vector(paths.solution, system.x_true);
    std::ofstream g(paths.geometry);
    if (!g) throw IoError("cannot write " + paths.geometry.string());
    g << system.descriptor().dump(2) << "\n";
    return paths;
}

TomographySystem load_system(const std::filesystem::path& matrix_path,
                             const std::filesystem::path& rhs_path,
                             const std::optional<std::filesystem::path>& solution_path) {
    TomographySystem sys;
    sys.A = read_matrix_market(matrix_path);
    sys.b = read_vector(rhs_path);
    if (sys.b.size() != sys.A.rows())
        throw IoError("rhs length does not match the matrix row count");
    if (solution_path) {
        sys.x_true = read_vector(*solution_path);
        if (sys.x_true.size() != sys.A.cols())
            throw IoError("solution length does not match the matrix column count");
    }
    return sys;
}

} // namespace asi
