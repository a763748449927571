#include "waxsolve/perturbation.hpp"

#include <cmath>

#include "waxsolve/oracle.hpp"

namespace waxsolve {

Matrix perturb_potential(const Matrix& V, double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw InvalidDelta("perturb_potential: delta must lie in (0, 1)");
    Matrix vp = V;
    for (std::size_t i = 0; i < V.size(); ++i) vp(i, i) += Complex(0.0, delta);
    return vp;
}

SolveReport solve_real_ground(const EigenProblem& problem, const PerturbationConfig& pcfg,
                              const SearchConfig& cfg, const InnerConfig& cfg_inner) {
    problem.validate();
    EigenProblem perturbed{problem.T, perturb_potential(problem.V, pcfg.delta), problem.lambda_ex,
                           problem.r};
    SolveReport rep = solve_ground(perturbed, cfg, cfg_inner);
    if (rep.u.empty()) return rep; // nothing to shift back

    rep.epsilon += Complex(0.0, problem.lambda_ex * pcfg.delta);
    rep.residual = residual_norm(problem.T, problem.V, rep.lambda_achieved, rep.epsilon, rep.u);
    if (rep.converged && rep.residual > 1e-8 * problem.T.inf_norm()) {
        rep.converged = false;
        rep.warnings.push_back("shifted-back residual above bound");
    }
    if (std::abs(rep.epsilon.imag()) > pcfg.tol_real)
        rep.warnings.push_back("shifted-back eigenvalue kept an imaginary part above tol_real");
    return rep;
}

} // namespace waxsolve
