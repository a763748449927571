#pragma once

// The outer loop. Since the inner iteration converges for complex eps but to
// a generally complex coupling, the solver works in polar coordinates and
// alternates two one-dimensional searches:
//
//   magnitude pass:  vary |eps| on a ray of fixed phase(eps) until
//                    |lambda(eps)| hits the target coupling lambda_ex;
//   phase pass:      vary phase(eps) at fixed |eps| until phase(lambda) = 0.
//
// |lambda| vs |eps| and phase(lambda) vs phase(eps) are close to linear at
// desk scale, so each pass brackets a sign change incrementally and then
// lets a guarded secant finish. A phase pass shifts |lambda| and vice versa,
// hence the alternation; it stops once both criteria hold at one point.

#include <string>
#include <vector>

#include "waxsolve/fixed_point.hpp"
#include "waxsolve/random_gen.hpp"

namespace waxsolve {

// How cold inner solves pick their start vector (warm starts take over once
// a neighbouring sample has converged).
struct StartVectorSpec {
    bool ones = false; // all-ones instead of the seeded draw
    std::uint64_t seed = kDefaultStartSeed;
};

struct SearchConfig {
    double eps_mag_start = 0.1; // first magnitude sample of the scan grid
    double eps_mag_step = 0.25; // scan increment
    double tol_mag = 1e-9;      // relative, on ||lambda| - lambda_ex| / lambda_ex
    double tol_phase = 1e-9;    // radians, on |phase(lambda)|
    int max_outer_cycles = 40;
    int max_secant_steps = 30;
    double phase_start = 0.0;
    double singular_nudge = 1e-8; // relative magnitude nudge off resolvent poles
    StartVectorSpec start;        // not part of the config document
};

struct ScanSample {
    PolarScalar eps_polar;
    PolarScalar lambda_polar; // NaN fields when the sample did not converge
    int inner_iterations = 0;
    bool converged = false;
};

// Samples ordered by the swept coordinate for scan_magnitude/scan_phase.
// SolveReport reuses the type as a chronological trace of all outer-search
// evaluations (alternating sweeps, ordered per refinement pass).
struct ScanCurve {
    std::vector<ScanSample> samples;
};

struct SolveReport {
    Complex epsilon{};
    Vector u;
    Complex lambda_achieved{};
    double residual = 0.0;
    int outer_cycles = 0;
    ScanCurve trace;
    bool converged = false;

    // diagnostics
    int max_secant_steps_used = 0; // worst refinement pass, post-bracketing
    std::vector<std::string> warnings;
};

struct RefineResult {
    double value = 0.0;    // refined |eps| or phase(eps)
    int secant_steps = 0;  // secant iterations after bracketing
    Complex epsilon{};     // evaluated point the refinement settled on
    Complex lambda{};
    Vector u;
};

// Inner solve per grid point, warm-starting each start vector from the
// previous converged sample. Non-convergent points (including resolvent
// poles) are recorded with converged = false, never thrown.
ScanCurve scan_magnitude(const EigenProblem& problem, double phase_eps, double mag_lo,
                         double mag_hi, double step, const InnerConfig& cfg_inner,
                         const StartVectorSpec& start = {});

// Same sweep over phase(eps) at fixed |eps|.
ScanCurve scan_phase(const EigenProblem& problem, double eps_mag, double phase_lo,
                     double phase_hi, double step, const InnerConfig& cfg_inner,
                     const StartVectorSpec& start = {});

// Secant on f(m) = |lambda(m e^{i phase})| - lambda_ex over [m1, m2].
// Subdivides for a sign change when the endpoints do not straddle; runs an
// open (extrapolating) secant when f is monotone without one. Throws
// BracketFailure / SecantStall.
RefineResult refine_magnitude(const EigenProblem& problem, double phase_eps, double m1, double m2,
                              const SearchConfig& cfg, const InnerConfig& cfg_inner);

// Secant on g(p) = phase(lambda(mag e^{ip})) over [p1, p2].
RefineResult refine_phase(const EigenProblem& problem, double eps_mag, double p1, double p2,
                          const SearchConfig& cfg, const InnerConfig& cfg_inner);

// Full alternating search for the lowest-lying state reachable from the scan
// window. Throws NoBracket when the initial scan never brings |lambda| near
// lambda_ex on any starting ray.
SolveReport solve_ground(const EigenProblem& problem, const SearchConfig& cfg,
                         const InnerConfig& cfg_inner);

// Deflation hook: identical search with a projector applied every inner
// iteration (and to every start vector); project_start_only restricts it to
// start vectors.
SolveReport solve_ground(const EigenProblem& problem, const SearchConfig& cfg,
                         const InnerConfig& cfg_inner, const Projector& project,
                         bool project_start_only = false);

} // namespace waxsolve
