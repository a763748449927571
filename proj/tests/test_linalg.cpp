#include <doctest.h>

#include <numbers>

#include "test_util.hpp"

using namespace waxsolve;
using testutil::lu_reconstruction_error;
using testutil::random_matrix;
using testutil::random_vector;

namespace {
const Complex I(0.0, 1.0);
}

TEST_CASE("lu_factor: identity") {
    const LUFactorization f = lu_factor(Matrix::identity(2));
    CHECK(!f.singular);
    CHECK(f.perm[0] == 0);
    CHECK(f.perm[1] == 1);
    CHECK(f.lu[0] == Complex(1.0, 0.0));
    CHECK(f.lu[1] == Complex(0.0, 0.0));
    CHECK(f.lu[2] == Complex(0.0, 0.0));
    CHECK(f.lu[3] == Complex(1.0, 0.0));
}

TEST_CASE("lu_factor: permutation matrix pivots and reconstructs") {
    Matrix a(2);
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    const LUFactorization f = lu_factor(a);
    CHECK(!f.singular);
    CHECK(f.perm[0] == 1); // rows swapped
    CHECK(lu_reconstruction_error(a, f) == doctest::Approx(0.0));
}

TEST_CASE("lu_factor: zero pivot flags singular") {
    const LUFactorization f = lu_factor(Matrix::diagonal({Complex(2.0, 0.0), Complex(0.0, 0.0)}));
    CHECK(f.singular);
    CHECK(f.min_pivot_magnitude == 0.0);
}

TEST_CASE("lu_solve: identity, diagonal, swap") {
    CHECK(lu_solve(lu_factor(Matrix::identity(2)), {Complex(3.0, 1.0), Complex(2.0, 0.0)}) ==
          Vector{Complex(3.0, 1.0), Complex(2.0, 0.0)});

    const Vector xd =
        lu_solve(lu_factor(Matrix::diagonal({Complex(2.0, 0.0), Complex(4.0, 0.0)})),
                 {Complex(2.0, 0.0), Complex(4.0, 0.0)});
    CHECK(std::abs(xd[0] - 1.0) < 1e-15);
    CHECK(std::abs(xd[1] - 1.0) < 1e-15);

    Matrix swap(2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    const Vector xs = lu_solve(lu_factor(swap), {Complex(5.0, 2.0), Complex(-1.0, 3.0)});
    CHECK(xs[0] == Complex(-1.0, 3.0));
    CHECK(xs[1] == Complex(5.0, 2.0));
}

TEST_CASE("lu_solve: singular factorization throws") {
    const LUFactorization f = lu_factor(Matrix::diagonal({Complex(2.0, 0.0), Complex(0.0, 0.0)}));
    CHECK_THROWS_AS(lu_solve(f, {Complex(1.0, 0.0), Complex(1.0, 0.0)}), SingularFactorization);
}

TEST_CASE("matvec: basics and dimension mismatch") {
    const Vector x{Complex(1.0, 2.0), Complex(-3.0, 0.5)};
    CHECK(matvec(Matrix::identity(2), x) == x);

    const Vector y = matvec(Matrix::diagonal({Complex(1.0, 1.0), Complex(2.0, 0.0)}),
                            {Complex(1.0, 0.0), Complex(1.0, 0.0)});
    CHECK(y[0] == Complex(1.0, 1.0));
    CHECK(y[1] == Complex(2.0, 0.0));

    CHECK(matvec(Matrix(2), x) == Vector{Complex(0.0, 0.0), Complex(0.0, 0.0)});
    CHECK_THROWS_AS(matvec(Matrix::identity(3), x), DimensionMismatch);
}

TEST_CASE("inner: conjugated bra") {
    CHECK(inner({Complex(1.0, 0.0), Complex(0.0, 0.0)}, {Complex(4.0, 2.0), Complex(9.0, 9.0)}) ==
          Complex(4.0, 2.0));
    CHECK(inner({I, Complex(0.0, 0.0)}, {Complex(1.0, 0.0), Complex(0.0, 0.0)}) == -I);
    CHECK(inner({Complex(1.0, 0.0), Complex(1.0, 0.0)},
                {Complex(1.0, 0.0), Complex(-1.0, 0.0)}) == Complex(0.0, 0.0));
    CHECK_THROWS_AS(inner({Complex(1.0, 0.0)}, {Complex(1.0, 0.0), Complex(1.0, 0.0)}),
                    DimensionMismatch);
}

TEST_CASE("inner: conjugate symmetry over random pairs") {
    std::mt19937_64 eng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Vector r = random_vector(7, eng);
        const Vector u = random_vector(7, eng);
        const Complex lhs = inner(r, u);
        const Complex rhs = std::conj(inner(u, r));
        CHECK(std::abs(lhs - rhs) < 1e-14);
    }
}

TEST_CASE("to_polar: quadrants and edge values") {
    const PolarScalar p1 = to_polar(Complex(1.0, 1.0));
    CHECK(p1.magnitude == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(p1.phase == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));

    const PolarScalar p2 = to_polar(Complex(-1.0, 0.0));
    CHECK(p2.magnitude == doctest::Approx(1.0));
    CHECK(p2.phase == doctest::Approx(std::numbers::pi));

    const PolarScalar p3 = to_polar(Complex(0.0, -1.0));
    CHECK(p3.magnitude == doctest::Approx(1.0));
    CHECK(p3.phase == doctest::Approx(-std::numbers::pi / 2));

    CHECK(to_polar(Complex(0.0, 0.0)).phase == 0.0);
    CHECK(to_polar(Complex(3.0, 0.0)).phase == 0.0);
}

TEST_CASE("polar round-trip within 1e-14 relative") {
    std::mt19937_64 eng(12);
    for (int trial = 0; trial < 500; ++trial) {
        const double re = 100.0 * uniform_pm1(eng);
        const double im = 100.0 * uniform_pm1(eng);
        const Complex z(re, im);
        const Complex back = from_polar(to_polar(z));
        CHECK(std::abs(back - z) <= 1e-14 * std::abs(z));
    }
}

TEST_CASE("LU reconstruction over 200 random matrices n <= 20") {
    std::mt19937_64 eng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(eng() % 20);
        const Matrix a = random_matrix(n, eng);
        const LUFactorization f = lu_factor(a);
        CHECK(lu_reconstruction_error(a, f) <= 1e-12 * a.inf_norm());
    }
}

TEST_CASE("lu_solve then matvec recovers the right-hand side") {
    std::mt19937_64 eng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(eng() % 15);
        Matrix a = random_matrix(n, eng);
        for (std::size_t i = 0; i < n; ++i) a(i, i) += 4.0; // keep it well conditioned
        const Vector b = random_vector(n, eng);
        const Vector x = lu_solve(lu_factor(a), b);
        const Vector back = matvec(a, x);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(back[i] - b[i]));
        CHECK(err <= 1e-10 * std::max(1.0, inf_norm(b)));
    }
}

TEST_CASE("pencil subtracts the scaled potential") {
    const Matrix t = Matrix::diagonal({Complex(1.0, 0.0), Complex(5.0, 0.0)});
    const Matrix v = Matrix::diagonal({Complex(2.0, 0.0), Complex(1.0, 0.0)});
    const Matrix h = pencil(t, v, Complex(2.0, 0.0));
    CHECK(h(0, 0) == Complex(-3.0, 0.0));
    CHECK(h(1, 1) == Complex(3.0, 0.0));
    CHECK_THROWS_AS(pencil(t, Matrix::identity(3), 1.0), DimensionMismatch);
}
