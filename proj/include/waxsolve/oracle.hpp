#pragma once

// Independent brute-force verification: eigenvalues of a fixed-coupling
// matrix H are located as roots of det(H - eps*I) via log-determinant
// evaluation on a complex grid, Newton polishing with the trace identity
//   d/deps log det(H - eps I) = -tr((H - eps I)^(-1)),
// and inverse-iteration residual checks. Shares nothing with the iterative
// solver beyond the dense LU kernel, so a bug there cannot mask itself here.

#include <optional>
#include <vector>

#include "waxsolve/linalg.hpp"

namespace waxsolve {

struct LogDet {
    double log_magnitude = 0.0; // ln |det|; -infinity when singular
    double phase = 0.0;         // arg(det) in (-pi, pi]
    bool singular = false;      // some pivot is exactly zero
};

struct GridRect {
    double re_lo = -1.0, re_hi = 1.0;
    double im_lo = -1.0, im_hi = 1.0;
    int re_samples = 48, im_samples = 48;
};

struct OracleConfig {
    std::optional<GridRect> grid; // default: Gershgorin bounding box padded 10%
    double newton_tol = 1e-12;
    int newton_max = 50;
    double dedupe_tol = 1e-8;
};

struct Spectrum {
    std::vector<Complex> values;    // sorted by (re, im)
    std::vector<double> residuals;  // inverse-iteration residual per value
    bool complete = false;          // found as many distinct roots as the dimension
};

// log det(H - eps*I) accumulated from LU pivots, permutation parity folded
// into the phase. Safe against overflow/underflow for n up to a few hundred.
LogDet char_logdet(const Matrix& H, Complex epsilon);

// Newton iteration eps <- eps + 1/tr((H - eps I)^(-1)); the trace costs n
// substitutions against basis vectors per step. Throws NewtonStall after
// newton_max steps, ZeroDerivative when the trace magnitude is below 1e-14.
Complex newton_root(const Matrix& H, Complex eps0, const OracleConfig& cfg);

// Grid scan + Newton polish from every local minimum of ln|det|, dedupe,
// then verify each candidate by inverse iteration (residual <= 1e-8 * |H|).
// Intended for n <= 64.
Spectrum eig_all_small(const Matrix& H, const OracleConfig& cfg);

// |(T - lambda V) u - eps u|_inf / |u|_inf. Throws ZeroVector.
double residual_norm(const Matrix& T, const Matrix& V, Complex lambda, Complex epsilon,
                     const Vector& u);

// Bounding box of the Gershgorin disks, padded 10% per side.
GridRect gershgorin_box(const Matrix& H);

} // namespace waxsolve
