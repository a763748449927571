#pragma once

// Excited states: already-found eigendirections are removed from the iterate
// with biorthogonal projectors P = prod_k (I - right_k left_k^T / pairing_k),
// where left_k is a left eigenvector of H = T - lambda_ex V and the pairing
// is the bilinear (unconjugated) product left^T right. Right eigenvectors of
// a non-Hermitian H are not mutually orthogonal, so conjugated projection
// would leave exactly the component the iteration re-amplifies. Rounding
// reintroduces deflated components, so the projector is re-applied on every
// inner iteration by default; the literal project-the-start-vector-only mode
// is kept behind DeflationMode for comparison runs.

#include <vector>

#include "waxsolve/search.hpp"

namespace waxsolve {

struct EigenPair {
    Complex epsilon{};
    Vector right;     // u, inf-norm normalized
    Vector left;      // w with w^T H = eps w^T, inf-norm normalized
    Complex pairing{}; // left^T right (no conjugation)
};

enum class DeflationMode { reproject_each_iteration, start_vector_only };

// Left eigenvector at a converged right-solve eigenvalue, obtained by the
// same fixed-point machinery on the transposed problem. The resolvent is
// nudged off pair_epsilon only if it is singular there.
Vector solve_left(const EigenProblem& problem, Complex pair_epsilon, const InnerConfig& cfg_inner);

// P x, applied pair by pair as vector operations. Throws DefectivePair when
// some |pairing| <= 1e-10.
Vector deflate_vector(const Vector& x, const std::vector<EigenPair>& pairs);

// Builds a pair for a converged report (solves the left problem, normalizes,
// and validates the pairing).
EigenPair make_eigen_pair(const EigenProblem& problem, const SolveReport& report,
                          const InnerConfig& cfg_inner);

// Ground state plus k deflated re-runs of the outer search, in discovery
// order. Returned states are pairwise distinct; each converged report obeys
// the usual guarantees. A state that exhausts the cycle budget ends the
// sequence with converged = false. Throws DeflationBreakdown when the
// deflated iterate falls back onto an already-found direction or a duplicate
// eigenvalue is produced.
std::vector<SolveReport> solve_excited(const EigenProblem& problem, int k, const SearchConfig& cfg,
                                       const InnerConfig& cfg_inner,
                                       DeflationMode mode = DeflationMode::reproject_each_iteration);

} // namespace waxsolve
