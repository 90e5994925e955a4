#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asi/hyperplane.hpp"
#include "asi/operator.hpp"
#include "asi/rng.hpp"

using namespace asi;

namespace {

/// Dense affine map x -> M x + c; a rotation gives a nonexpansive instance.
class DenseAffineOperator final : public FixedPointOperator {
  public:
    DenseAffineOperator(std::vector<Vector> m, Vector c) : m_(std::move(m)), c_(std::move(c)) {}
    std::size_t dimension() const override { return c_.size(); }
    void apply(std::span<const double> x, std::span<double> out) const override {
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = dot(m_[i], x) + c_[i];
    }

  private:
    std::vector<Vector> m_;
    Vector c_;
};

class ScalingOperator final : public FixedPointOperator {
  public:
    ScalingOperator(std::size_t dim, double factor) : dim_(dim), factor_(factor) {}
    std::size_t dimension() const override { return dim_; }
    void apply(std::span<const double> x, std::span<double> out) const override {
        for (std::size_t j = 0; j < dim_; ++j) out[j] = factor_ * x[j];
    }

  private:
    std::size_t dim_;
    double factor_;
};

/// Random rotation built from seeded Givens rotations (orthogonal, hence
/// nonexpansive, with fixed point 0).
std::vector<Vector> random_rotation(std::size_t n, std::uint64_t seed) {
    std::vector<Vector> m(n, Vector(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    Rng rng(seed);
    for (int sweep = 0; sweep < 3; ++sweep)
        for (std::size_t p = 0; p + 1 < n; ++p) {
            const double th = rng.uniform(0.0, 6.28318530717958647692);
            const double c = std::cos(th), s = std::sin(th);
            for (std::size_t j = 0; j < n; ++j) {
                const double a = m[p][j], b = m[p + 1][j];
                m[p][j] = c * a - s * b;
                m[p + 1][j] = s * a + c * b;
            }
        }
    return m;
}

} // namespace

TEST_CASE("residual of the identity is zero everywhere") {
    IdentityOperator id(2);
    Vector x = {3.0, -1.0};
    auto r = residual(id, x);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 0.0);
}

TEST_CASE("residual of a hyperplane projection at the origin") {
    // <(1,0), x> = 2: the projection of the origin is (2,0), so x - P(x) = (-2,0).
    HyperplaneProjector p(Hyperplane::from_dense(Vector{1.0, 0.0}, 2.0));
    auto r = residual(p, Vector{0.0, 0.0});
    CHECK(r[0] == -2.0);
    CHECK(r[1] == 0.0);
}

TEST_CASE("residual matches an independently coded x - T(x) on a random averaged map") {
    const std::size_t n = 5;
    auto rotation = std::make_shared<DenseAffineOperator>(random_rotation(n, 11),
                                                          Vector(n, 0.0));
    auto averaged = std::make_shared<RelaxedOperator>(rotation, 0.7);

    Rng rng(123);
    Vector x(n);
    rng.fill_normal(x);

    auto r = residual(*averaged, x);
    Vector tx = (*averaged)(x);
    for (std::size_t j = 0; j < n; ++j) CHECK(r[j] == x[j] - tx[j]);
}

TEST_CASE("relaxation endpoints") {
    auto base = std::make_shared<HyperplaneProjector>(
        Hyperplane::from_dense(Vector{1.0, 0.0}, 2.0));
    Rng rng(5);
    Vector x(2);

    SUBCASE("alpha = 0 is the identity") {
        RelaxedOperator r(base, 0.0);
        for (int t = 0; t < 10; ++t) {
            rng.fill_normal(x);
            auto y = r(x);
            CHECK(y[0] == x[0]);
            CHECK(y[1] == x[1]);
        }
    }
    SUBCASE("alpha = 1 reproduces the base operator") {
        RelaxedOperator r(base, 1.0);
        for (int t = 0; t < 10; ++t) {
            rng.fill_normal(x);
            auto y = r(x);
            auto z = (*base)(x);
            CHECK(y[0] == doctest::Approx(z[0]).epsilon(1e-15));
            CHECK(y[1] == doctest::Approx(z[1]).epsilon(1e-15));
        }
    }
    SUBCASE("alpha = 1/2 lands midway") {
        RelaxedOperator r(base, 0.5);
        auto y = r(Vector{0.0, 0.0});
        CHECK(y[0] == 1.0);  // midpoint of (0,0) and (2,0)
        CHECK(y[1] == 0.0);
    }
    SUBCASE("alpha outside [0,2] is rejected") {
        CHECK_THROWS_AS(RelaxedOperator(base, -0.1), InvalidParameter);
        CHECK_THROWS_AS(RelaxedOperator(base, 2.0001), InvalidParameter);
    }
}

TEST_CASE("relaxation preserves fixed points for alpha != 0") {
    auto base = std::make_shared<HyperplaneProjector>(
        Hyperplane::from_dense(Vector{3.0, 4.0}, 5.0));
    RelaxedOperator r(base, 1.7);
    Vector on_plane = {3.0 / 5.0, 4.0 / 5.0};  // <a,x> = 1.8 + 3.2 = 5
    auto y = r(on_plane);
    CHECK(y[0] == doctest::Approx(on_plane[0]).epsilon(1e-14));
    CHECK(y[1] == doctest::Approx(on_plane[1]).epsilon(1e-14));
}

TEST_CASE("nonexpansiveness probe") {
    SUBCASE("identity has ratio exactly 1") {
        IdentityOperator id(4);
        auto report = nonexpansive_probe(id, 200, 9);
        CHECK(report.max_ratio == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(report.passed());
    }
    SUBCASE("projections never expand") {
        HyperplaneProjector p(Hyperplane::from_dense(Vector{1.0, -2.0, 0.5}, 1.0));
        auto report = nonexpansive_probe(p, 500, 10);
        CHECK(report.max_ratio <= 1.0 + 1e-10);
        CHECK(report.passed());
    }
    SUBCASE("a 2x scaling is flagged") {
        ScalingOperator s(3, 2.0);
        auto report = nonexpansive_probe(s, 100, 11);
        CHECK(report.max_ratio == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(report.violations > 0);
        CHECK(!report.passed());
    }
}

TEST_CASE("dimension mismatches are contract violations") {
    IdentityOperator id(3);
    Vector tiny = {1.0};
    CHECK_THROWS_AS(residual(id, tiny), ContractViolation);
}
