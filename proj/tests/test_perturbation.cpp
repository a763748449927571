#include <doctest.h>

#include "test_util.hpp"
#include "waxsolve/oracle.hpp"
#include "waxsolve/perturbation.hpp"

using namespace waxsolve;

TEST_CASE("perturb_potential: diagonal shift only") {
    const Matrix vp = perturb_potential(Matrix(2), 0.1);
    CHECK(vp(0, 0) == Complex(0.0, 0.1));
    CHECK(vp(1, 1) == Complex(0.0, 0.1));
    CHECK(vp(0, 1) == Complex(0.0, 0.0));

    const Matrix vp2 = perturb_potential(Matrix::identity(2), 0.5);
    CHECK(vp2(0, 0) == Complex(1.0, 0.5));
    CHECK(vp2(1, 1) == Complex(1.0, 0.5));
}

TEST_CASE("perturb_potential: delta bounds") {
    CHECK_THROWS_AS(perturb_potential(Matrix::identity(2), 1.0), InvalidDelta);
    CHECK_THROWS_AS(perturb_potential(Matrix::identity(2), 0.0), InvalidDelta);
    CHECK_THROWS_AS(perturb_potential(Matrix::identity(2), -0.1), InvalidDelta);
}

TEST_CASE("solve_real_ground: diagonal problem shifts back exactly") {
    EigenProblem p;
    p.T = Matrix::diagonal({Complex(1.0, 0.0), Complex(5.0, 0.0)});
    p.V = Matrix::diagonal({Complex(2.0, 0.0), Complex(1.0, 0.0)});
    p.lambda_ex = 1.0;
    p.r = ones_vector(2);

    PerturbationConfig pcfg; // delta = 0.1
    const SolveReport rep = solve_real_ground(p, pcfg, SearchConfig{}, InnerConfig{});
    CHECK(rep.converged);
    CHECK(std::abs(rep.epsilon - Complex(-1.0, 0.0)) < 1e-7);
    CHECK(std::abs(rep.epsilon.imag()) <= pcfg.tol_real);
    CHECK(rep.warnings.empty());
}

TEST_CASE("solve_real_ground: second diagonal instance, delta = 0.25") {
    EigenProblem p;
    p.T = Matrix::diagonal({Complex(1.0, 0.0), Complex(5.0, 0.0)});
    p.V = Matrix::diagonal({Complex(2.0, 0.0), Complex(1.0, 0.0)});
    p.lambda_ex = 2.0;
    p.r = ones_vector(2);

    PerturbationConfig pcfg;
    pcfg.delta = 0.25;
    const SolveReport rep = solve_real_ground(p, pcfg, SearchConfig{}, InnerConfig{});
    CHECK(rep.converged);
    CHECK(std::abs(rep.epsilon - Complex(-3.0, 0.0)) < 1e-7);
}

TEST_CASE("solve_real_ground: symmetric real problem matches the oracle") {
    const auto [t, v] = gen_random(10, 3, MatrixKind::real_symmetric);
    EigenProblem p{t, v, 2.0, ones_vector(10)};
    const SolveReport rep = solve_real_ground(p, PerturbationConfig{}, SearchConfig{}, InnerConfig{});
    REQUIRE(rep.converged);
    CHECK(std::abs(rep.epsilon.imag()) <= 1e-8);
    CHECK(rep.residual <= 1e-8 * t.inf_norm());

    const Spectrum spectrum = eig_all_small(pencil(t, v, 2.0), OracleConfig{});
    double best = 1e30;
    for (const Complex& x : spectrum.values) best = std::min(best, std::abs(x - rep.epsilon));
    CHECK(best <= 1e-6);
}

TEST_CASE("identity shift moves the whole coupled spectrum by -i lambda delta") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const auto [t, v] = gen_random(6, seed, MatrixKind::complex_general);
        const double lambda = 2.0;
        const double delta = 0.1;
        const Spectrum base = eig_all_small(pencil(t, v, lambda), OracleConfig{});
        const Spectrum shifted =
            eig_all_small(pencil(t, perturb_potential(v, delta), lambda), OracleConfig{});
        REQUIRE(base.complete);
        REQUIRE(shifted.complete);
        const Complex shift(0.0, -lambda * delta);
        for (const Complex& x : base.values) {
            double best = 1e30;
            for (const Complex& y : shifted.values) best = std::min(best, std::abs(y - (x + shift)));
            CHECK(best <= 1e-10 * std::max(1.0, std::abs(x)));
        }
    }
}

TEST_CASE("perturbed solve's eigenvector satisfies the unperturbed problem") {
    const auto [t, v] = gen_random(8, 4, MatrixKind::real_symmetric);
    EigenProblem p{t, v, 2.0, ones_vector(8)};
    const SolveReport rep = solve_real_ground(p, PerturbationConfig{}, SearchConfig{}, InnerConfig{});
    REQUIRE(rep.converged);
    CHECK(residual_norm(t, v, rep.lambda_achieved, rep.epsilon, rep.u) <= 1e-8 * t.inf_norm());
}
