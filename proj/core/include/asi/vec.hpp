#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "asi/error.hpp"

namespace asi {

using Vector = std::vector<double>;

inline double dot(std::span<const double> x, std::span<const double> y) {
    detail::require(x.size() == y.size(), "dot: size mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * y[j];
    return s;
}

inline double norm_sq(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

inline double norm(std::span<const double> x) { return std::sqrt(norm_sq(x)); }

inline double dist_sq(std::span<const double> x, std::span<const double> y) {
    detail::require(x.size() == y.size(), "dist_sq: size mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double d = x[j] - y[j];
        s += d * d;
    }
    return s;
}

inline double dist(std::span<const double> x, std::span<const double> y) {
    return std::sqrt(dist_sq(x, y));
}

/// y += a*x
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
    detail::require(x.size() == y.size(), "axpy: size mismatch");
    for (std::size_t j = 0; j < x.size(); ++j) y[j] += a * x[j];
}

inline bool all_finite(std::span<const double> x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace asi
