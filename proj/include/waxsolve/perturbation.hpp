#pragma once

// Problems whose lowest-lying eigenvalue is real stall the complex-plane
// search, so the potential is perturbed to V' = V + i*delta*I. The identity
// shift moves the whole coupled spectrum by exactly -i*lambda*delta and
// leaves eigenvectors untouched, so the unperturbed eigenvalue is recovered
// algebraically: eps = eps' + i*lambda_ex*delta.

#include "waxsolve/search.hpp"

namespace waxsolve {

struct PerturbationConfig {
    double delta = 0.1;    // must satisfy 0 < delta < 1
    double tol_real = 1e-8; // |Im eps| above this is flagged in the report
};

// V' with V'_jj = V_jj + i*delta; off-diagonals unchanged.
// Throws InvalidDelta outside (0, 1).
Matrix perturb_potential(const Matrix& V, double delta);

// solve_ground on the perturbed problem, shifted back, with the residual
// recomputed against the unperturbed (T, V, lambda_ex).
SolveReport solve_real_ground(const EigenProblem& problem, const PerturbationConfig& pcfg,
                              const SearchConfig& cfg, const InnerConfig& cfg_inner);

} // namespace waxsolve
