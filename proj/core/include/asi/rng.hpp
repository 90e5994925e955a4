#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace asi {

/// Seeded generator with hand-rolled draw helpers. std::mt19937_64 has a
/// pinned algorithm, while the standard <random> distributions do not; the
/// helpers keep identical seeds reproducible across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi] inclusive (rejection-free modulo is fine here;
    /// ranges are tiny compared to 2^64).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<std::int64_t>(gen_() % span);
    }

    /// Standard normal via the polar method.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    void fill_normal(std::span<double> out) {
        for (double& v : out) v = normal();
    }

    void fill_uniform(std::span<double> out, double lo, double hi) {
        for (double& v : out) v = uniform(lo, hi);
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace asi
