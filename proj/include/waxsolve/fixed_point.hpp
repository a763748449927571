#pragma once

// The inner loop of the solver: at fixed eps, iterate
//
//     u_{n+1} = G_eps V u_n / <r | G_eps V u_n>
//
// until the vector settles, then extract the coupling lambda(eps) as
// <r | G_eps V u>^(-1). The iteration converges to the dominant eigenvector
// of G_eps V, i.e. to the generalized coupling of smallest magnitude at this
// eps; no spectral ordering beyond that is claimed.

#include <functional>

#include "waxsolve/linalg.hpp"
#include "waxsolve/resolvent.hpp"

namespace waxsolve {

struct EigenProblem {
    Matrix T;
    Matrix V;
    double lambda_ex = 1.0; // target real coupling, > 0
    Vector r;               // reference vector defining <r|u> = 1

    void validate() const;
};

struct InnerConfig {
    double tol_vector = 1e-10;
    double tol_lambda = 1e-10;
    int max_iterations = 500;
    double min_denominator = 1e-13;
};

struct InnerResult {
    Vector u;
    Complex lambda{};
    int iterations = 0;
    bool converged = false;
    double last_delta = 0.0;
};

// Optional hook applied to each raw iterate before renormalization.
// Deflation uses it to keep the iterate off already-found eigendirections.
using Projector = std::function<void(Vector&)>;

// One application of the normalized map. The input need not be r-normalized
// (the map is scale invariant); the result satisfies <r|result> = 1 up to
// rounding. Throws DegenerateDenominator when |<r|G_eps V u>| falls under
// min_denominator * inf_norm(G_eps V u), signalling r nearly orthogonal to
// the iterate.
Vector iterate_once(const Resolvent& res, const Matrix& V, const Vector& r, const Vector& u,
                    double min_denominator);

// lambda(eps) = <r | G_eps V u>^(-1) for an r-normalized u.
Complex lambda_of(const Resolvent& res, const Matrix& V, const Vector& r, const Vector& u);

// Runs the iteration at fixed eps from start vector u0 (renormalized
// internally). Converged when both the vector change (inf norm) and the
// lambda change pass their tolerances. On a degenerate denominator the start
// vector is reseeded once before the error propagates. project_start_only
// restricts the projector to the start vector (the literal one-shot
// deflation mode).
InnerResult run_fixed_point(const EigenProblem& problem, Complex epsilon, const Vector& u0,
                            const InnerConfig& cfg, const Projector& project = {},
                            bool project_start_only = false);

// Same, reusing an already-built resolvent (one factorization per eps).
InnerResult run_fixed_point(const Resolvent& res, const Matrix& V, const Vector& r,
                            const Vector& u0, const InnerConfig& cfg,
                            const Projector& project = {}, bool project_start_only = false);

} // namespace waxsolve
