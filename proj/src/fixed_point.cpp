#include "waxsolve/fixed_point.hpp"

#include <cmath>

#include "waxsolve/random_gen.hpp"

namespace waxsolve {

namespace {

constexpr double kLambdaOfDenominator = 1e-13;

// Shared guard: the normalization denominator must not vanish relative to
// the iterate it normalizes.
Complex guarded_denominator(const Vector& r, const Vector& w, double min_denominator) {
    const Complex d = inner(r, w);
    const double scale = inf_norm(w);
    if (scale == 0.0 || std::abs(d) < min_denominator * scale)
        throw DegenerateDenominator("reference vector nearly orthogonal to the iterate");
    return d;
}

void scale_vector(Vector& v, Complex factor) {
    for (Complex& z : v) z *= factor;
}

} // namespace

void EigenProblem::validate() const {
    if (T.size() != V.size())
        throw DimensionMismatch("problem: T and V dimensions differ");
    if (r.size() != T.size())
        throw DimensionMismatch("problem: reference vector length differs");
    if (!(lambda_ex > 0.0) || !std::isfinite(lambda_ex))
        throw Error("problem: lambda_ex must be a positive real");
    if (!T.is_finite() || !V.is_finite() || !is_finite(r))
        throw Error("problem: entries must be finite");
}

Vector iterate_once(const Resolvent& res, const Matrix& V, const Vector& r, const Vector& u,
                    double min_denominator) {
    Vector w = res.apply_green_v(V, u);
    const Complex d = guarded_denominator(r, w, min_denominator);
    scale_vector(w, 1.0 / d);
    return w;
}

Complex lambda_of(const Resolvent& res, const Matrix& V, const Vector& r, const Vector& u) {
    const Vector w = res.apply_green_v(V, u);
    const Complex d = guarded_denominator(r, w, kLambdaOfDenominator);
    return 1.0 / d;
}

namespace {

InnerResult run_attempt(const Resolvent& res, const Matrix& V, const Vector& r, Vector u,
                        const InnerConfig& cfg, const Projector& project,
                        bool project_start_only) {
    if (project) project(u);
    const bool project_iterates = project && !project_start_only;
    const Complex d0 = guarded_denominator(r, u, cfg.min_denominator);
    scale_vector(u, 1.0 / d0);

    Complex lambda_prev{};
    bool have_lambda = false;
    double delta = 0.0;

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        Vector w = res.apply_green_v(V, u);
        if (project_iterates) project(w);
        const Complex d = guarded_denominator(r, w, cfg.min_denominator);
        const Complex lambda_est = 1.0 / d;
        scale_vector(w, 1.0 / d);

        delta = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
            delta = std::max(delta, std::abs(w[i] - u[i]));

        if (!is_finite(w) || !std::isfinite(delta))
            return {std::move(u), lambda_prev, it, false, delta};

        const bool vector_ok = delta <= cfg.tol_vector;
        const bool lambda_ok = have_lambda && std::abs(lambda_est - lambda_prev) <=
                                                  cfg.tol_lambda * std::max(1.0, std::abs(lambda_prev));
        u = std::move(w);
        lambda_prev = lambda_est;
        have_lambda = true;

        if (vector_ok && lambda_ok) {
            // lambda at the final iterate, one extra application
            Vector w2 = res.apply_green_v(V, u);
            if (project_iterates) project(w2);
            const Complex d2 = guarded_denominator(r, w2, cfg.min_denominator);
            return {std::move(u), 1.0 / d2, it, true, delta};
        }
    }
    return {std::move(u), lambda_prev, cfg.max_iterations, false, delta};
}

} // namespace

InnerResult run_fixed_point(const Resolvent& res, const Matrix& V, const Vector& r,
                            const Vector& u0, const InnerConfig& cfg, const Projector& project,
                            bool project_start_only) {
    try {
        return run_attempt(res, V, r, u0, cfg, project, project_start_only);
    } catch (const DegenerateDenominator&) {
        // one automatic reseed of the start vector
        return run_attempt(res, V, r, seeded_vector(r.size(), kReseedSeed), cfg, project,
                           project_start_only);
    }
}

InnerResult run_fixed_point(const EigenProblem& problem, Complex epsilon, const Vector& u0,
                            const InnerConfig& cfg, const Projector& project,
                            bool project_start_only) {
    problem.validate();
    Resolvent res(problem.T, epsilon);
    return run_fixed_point(res, problem.V, problem.r, u0, cfg, project, project_start_only);
}

} // namespace waxsolve
