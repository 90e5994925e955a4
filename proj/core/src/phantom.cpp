#include "asi/phantom.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "asi/error.hpp"

namespace asi {

namespace {
constexpr Ellipse kDefaultTable[] = {
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
};
} // namespace

std::span<const Ellipse> default_ellipse_table() { return kDefaultTable; }

std::vector<Ellipse> read_ellipse_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad ellipse table " + path.string() + ": " + e.what());
    }
    std::vector<Ellipse> table;
    for (const auto& e : j) {
        Ellipse el;
        el.intensity = e.at("intensity").get<double>();
        el.a = e.at("a").get<double>();
        el.b = e.at("b").get<double>();
        el.x0 = e.at("x0").get<double>();
        el.y0 = e.at("y0").get<double>();
        el.angle_deg = e.value("angle_deg", 0.0);
        table.push_back(el);
    }
    return table;
}

void write_ellipse_table(const std::filesystem::path& path,
                         std::span<const Ellipse> table) {
    nlohmann::json j = nlohmann::json::array();
    for (const Ellipse& e : table)
        j.push_back({{"intensity", e.intensity},
                     {"a", e.a},
                     {"b", e.b},
                     {"x0", e.x0},
                     {"y0", e.y0},
                     {"angle_deg", e.angle_deg}});
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

PhantomImage make_phantom(std::size_t side, std::span<const Ellipse> table) {
    detail::require_param(side >= 8, "phantom: side must be at least 8");
    detail::require_param(!table.empty(), "phantom: empty ellipse table");

    struct Placed {
        double intensity, inv_a, inv_b, x0, y0, ct, st;
    };
    std::vector<Placed> placed;
    placed.reserve(table.size());
    constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
    for (const Ellipse& e : table) {
        detail::require_param(e.a > 0.0 && e.b > 0.0, "phantom: ellipse axes must be positive");
        placed.push_back({e.intensity, 1.0 / e.a, 1.0 / e.b, e.x0, e.y0,
                          std::cos(e.angle_deg * kDegToRad),
                          std::sin(e.angle_deg * kDegToRad)});
    }

    PhantomImage img;
    img.side = side;
    img.table.assign(table.begin(), table.end());
    img.values.assign(side * side, 0.0);
    const double n = static_cast<double>(side);
    const auto s = static_cast<std::ptrdiff_t>(side);
    for (std::size_t r = 0; r < side; ++r) {
        // Pixel centers are (2c+1-n)/n so that mirrored columns negate exactly.
        const double y =
            static_cast<double>(2 * (s - 1 - static_cast<std::ptrdiff_t>(r)) + 1 - s) / n;
        for (std::size_t c = 0; c < side; ++c) {
            const double x = static_cast<double>(2 * static_cast<std::ptrdiff_t>(c) + 1 - s) / n;
            double v = 0.0;
            for (const Placed& p : placed) {
                const double dx = x - p.x0;
                const double dy = y - p.y0;
                const double u = (dx * p.ct + dy * p.st) * p.inv_a;
                const double w = (-dx * p.st + dy * p.ct) * p.inv_b;
                if (u * u + w * w <= 1.0) v += p.intensity;
            }
            img.values[r * side + c] = v;
        }
    }
    detail::require(all_finite(img.values), "phantom: non-finite pixel value");
    return img;
}

PhantomImage make_phantom(std::size_t side) {
    return make_phantom(side, default_ellipse_table());
}

void write_pgm(const std::filesystem::path& path, const PhantomImage& image,
               double scale_max) {
    detail::require_param(scale_max > 0.0, "pgm: scale must be positive");
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw IoError("cannot write " + path.string());
    std::fprintf(f, "P2\n%zu %zu\n255\n", image.side, image.side);
    for (std::size_t r = 0; r < image.side; ++r) {
        for (std::size_t c = 0; c < image.side; ++c) {
            double v = image.at(r, c) / scale_max;
            v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
            std::fprintf(f, "%d%c", static_cast<int>(std::lround(v * 255.0)),
                         c + 1 == image.side ? '\n' : ' ');
        }
    }
    if (std::fclose(f) != 0) throw IoError("write failed: " + path.string());
}

} // namespace asi
