#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "waxsolve/oracle.hpp"

using namespace waxsolve;
using testutil::cofactor_det;
using testutil::random_matrix;

TEST_CASE("char_logdet: diagonal and identity") {
    const LogDet d1 = char_logdet(Matrix::diagonal({Complex(1.0, 0.0), Complex(2.0, 0.0)}),
                                  Complex(0.0, 0.0));
    CHECK(!d1.singular);
    CHECK(d1.log_magnitude == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(std::abs(d1.phase) < 1e-14);

    const LogDet d2 = char_logdet(Matrix::identity(3), Complex(0.0, 0.0));
    CHECK(d2.log_magnitude == doctest::Approx(0.0));
    CHECK(std::abs(d2.phase) < 1e-14);
}

TEST_CASE("char_logdet: exact singularity is flagged") {
    const LogDet d = char_logdet(Matrix::diagonal({Complex(1.0, 0.0), Complex(2.0, 0.0)}),
                                 Complex(1.0, 0.0));
    CHECK(d.singular);
    CHECK(std::isinf(d.log_magnitude));
    CHECK(d.log_magnitude < 0.0);
}

TEST_CASE("char_logdet: agrees with cofactor expansion up to n = 6") {
    std::mt19937_64 eng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(eng() % 6);
        const Matrix h = random_matrix(n, eng);
        const Complex eps(uniform_pm1(eng), uniform_pm1(eng));
        Matrix shifted = h;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= eps;
        const Complex expected = cofactor_det(shifted);
        const LogDet got = char_logdet(h, eps);
        REQUIRE(!got.singular);
        const Complex back = std::exp(got.log_magnitude) *
                             Complex(std::cos(got.phase), std::sin(got.phase));
        CHECK(std::abs(back - expected) <= 1e-10 * std::abs(expected));
    }
}

TEST_CASE("newton_root: simple roots") {
    Matrix flip(2);
    flip(0, 1) = 1.0;
    flip(1, 0) = 1.0;
    const Complex r1 = newton_root(flip, Complex(0.9, 0.0), OracleConfig{});
    CHECK(std::abs(r1 - 1.0) < 1e-10);

    const Complex r2 =
        newton_root(Matrix::diagonal({Complex(3.0, 0.0)}), Complex(2.5, 0.0), OracleConfig{});
    CHECK(std::abs(r2 - 3.0) < 1e-10);
}

TEST_CASE("newton_root: symmetric saddle has zero derivative") {
    Matrix flip(2);
    flip(0, 1) = 1.0;
    flip(1, 0) = 1.0;
    CHECK_THROWS_AS(newton_root(flip, Complex(0.0, 0.0), OracleConfig{}), ZeroDerivative);
}

TEST_CASE("eig_all_small: tiny spectra") {
    const Spectrum s1 =
        eig_all_small(Matrix::diagonal({Complex(1.0, 0.0), Complex(2.0, 1.0)}), OracleConfig{});
    REQUIRE(s1.values.size() == 2);
    CHECK(s1.complete);
    CHECK(std::abs(s1.values[0] - Complex(1.0, 0.0)) < 1e-8);
    CHECK(std::abs(s1.values[1] - Complex(2.0, 1.0)) < 1e-8);

    Matrix rot(2);
    rot(0, 1) = 1.0;
    rot(1, 0) = -1.0;
    const Spectrum s2 = eig_all_small(rot, OracleConfig{});
    REQUIRE(s2.values.size() == 2);
    CHECK(std::abs(s2.values[0] - Complex(0.0, -1.0)) < 1e-8);
    CHECK(std::abs(s2.values[1] - Complex(0.0, 1.0)) < 1e-8);
}

TEST_CASE("eig_all_small: random six-dimensional spectra are complete and verified") {
    std::mt19937_64 eng(42);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix h = random_matrix(6, eng);
        const Spectrum s = eig_all_small(h, OracleConfig{});
        CHECK(s.complete);
        CHECK(s.values.size() == 6);
        for (double r : s.residuals) CHECK(r <= 1e-8 * h.inf_norm());
    }
}

TEST_CASE("eig_all_small: returned roots are Newton-stationary") {
    std::mt19937_64 eng(43);
    const Matrix h = random_matrix(5, eng);
    const Spectrum s = eig_all_small(h, OracleConfig{});
    REQUIRE(s.complete);
    OracleConfig cfg;
    cfg.newton_max = 1;
    for (const Complex& root : s.values) {
        Complex polished = root;
        try {
            polished = newton_root(h, root, cfg);
        } catch (const NewtonStall&) {
            continue; // a single step may not meet the step tolerance; fine
        }
        CHECK(std::abs(polished - root) <= 1e-8 * (1.0 + std::abs(root)));
    }
}

TEST_CASE("eig_all_small: multiplicities collapse and flag the spectrum incomplete") {
    const Spectrum s =
        eig_all_small(Matrix::diagonal({Complex(1.0, 0.0), Complex(1.0, 0.0)}), OracleConfig{});
    CHECK(s.values.size() == 1);
    CHECK(!s.complete);
    CHECK(std::abs(s.values[0] - 1.0) < 1e-8);
}

TEST_CASE("residual_norm: exact eigenpair and off direction") {
    const Matrix t = Matrix::diagonal({Complex(1.0, 0.0), Complex(2.0, 0.0)});
    const Matrix v0(2);
    const Vector e1{Complex(1.0, 0.0), Complex(0.0, 0.0)};
    const Vector e2{Complex(0.0, 0.0), Complex(1.0, 0.0)};
    CHECK(residual_norm(t, v0, Complex(0.0, 0.0), Complex(1.0, 0.0), e1) == 0.0);
    CHECK(residual_norm(t, v0, Complex(0.0, 0.0), Complex(1.0, 0.0), e2) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS(residual_norm(t, v0, 0.0, 0.0, Vector{Complex(0.0, 0.0), Complex(0.0, 0.0)}),
                    ZeroVector);
}

TEST_CASE("gershgorin_box encloses a diagonal spectrum") {
    const GridRect rect =
        gershgorin_box(Matrix::diagonal({Complex(-3.0, 2.0), Complex(5.0, -1.0)}));
    CHECK(rect.re_lo < -3.0);
    CHECK(rect.re_hi > 5.0);
    CHECK(rect.im_lo < -1.0);
    CHECK(rect.im_hi > 2.0);
}
