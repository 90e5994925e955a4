#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "asi/vec.hpp"

namespace asi {

/// One additive ellipse: semi-axes (a, b) and center in [-1,1]^2 coordinates,
/// rotation in degrees counterclockwise.
struct Ellipse {
    double intensity = 0.0;
    double a = 0.0;
    double b = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;
    double angle_deg = 0.0;
};

/// The canonical ten-ellipse head phantom parameter table (the widely used
/// low-contrast variant). Library configuration, not a measured dataset.
std::span<const Ellipse> default_ellipse_table();

std::vector<Ellipse> read_ellipse_table(const std::filesystem::path& path);
void write_ellipse_table(const std::filesystem::path& path, std::span<const Ellipse> table);

/// Square image sampled at pixel centers; each pixel's value is the sum of the
/// intensities of the ellipses containing its center. Row 0 is the top row.
struct PhantomImage {
    std::size_t side = 0;
    Vector values;  // row-major, side*side entries
    std::vector<Ellipse> table;

    double at(std::size_t row, std::size_t col) const { return values[row * side + col]; }
};

PhantomImage make_phantom(std::size_t side, std::span<const Ellipse> table);
PhantomImage make_phantom(std::size_t side);  // default table

/// 8-bit ASCII portable graymap with a fixed intensity scale, so identical
/// images produce identical bytes.
void write_pgm(const std::filesystem::path& path, const PhantomImage& image,
               double scale_max = 1.02);

} // namespace asi
