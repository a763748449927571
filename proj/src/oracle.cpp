#include "waxsolve/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "waxsolve/random_gen.hpp"

namespace waxsolve {

namespace {

Matrix shifted(const Matrix& H, Complex epsilon) {
    Matrix s = H;
    for (std::size_t i = 0; i < H.size(); ++i) s(i, i) -= epsilon;
    return s;
}

double wrap_phase(double p) {
    p = std::remainder(p, 2.0 * std::numbers::pi);
    if (p <= -std::numbers::pi) p = std::numbers::pi;
    return p;
}

} // namespace

LogDet char_logdet(const Matrix& H, Complex epsilon) {
    const LUFactorization f = lu_factor(shifted(H, epsilon));
    LogDet result;
    double log_mag = 0.0;
    double phase = (f.swap_count % 2 != 0) ? std::numbers::pi : 0.0;
    for (std::size_t i = 0; i < f.n; ++i) {
        const Complex piv = f.lu[i * f.n + i];
        const double apiv = std::abs(piv);
        if (apiv == 0.0) {
            result.singular = true;
            result.log_magnitude = -std::numeric_limits<double>::infinity();
            result.phase = 0.0;
            return result;
        }
        log_mag += std::log(apiv);
        phase += std::arg(piv);
    }
    result.log_magnitude = log_mag;
    result.phase = wrap_phase(phase);
    return result;
}

namespace {

// tr((H - eps I)^(-1)) by solving against the basis vectors.
Complex resolvent_trace(const LUFactorization& f) {
    Complex tr = 0.0;
    Vector e(f.n, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < f.n; ++i) {
        e[i] = 1.0;
        const Vector col = lu_solve(f, e);
        tr += col[i];
        e[i] = 0.0;
    }
    return tr;
}

} // namespace

namespace {

// Newton on det(H - eps I) with already-found roots divided out
// (Maehly's correction), so later searches are repelled from them:
//   eps <- eps + 1 / (tr(R) + sum_k 1/(eps - r_k)).
Complex newton_suppressed(const Matrix& H, Complex eps0, const OracleConfig& cfg,
                          const std::vector<Complex>& suppressed) {
    Complex eps = eps0;
    for (int it = 0; it < cfg.newton_max; ++it) {
        const LUFactorization f = lu_factor(shifted(H, eps));
        if (f.singular) return eps; // det is zero at working precision
        Complex denom = resolvent_trace(f);
        for (const Complex& r : suppressed) {
            const Complex gap = eps - r;
            if (std::abs(gap) == 0.0)
                throw ZeroDerivative("newton_root: landed exactly on a suppressed root");
            denom += 1.0 / gap;
        }
        if (std::abs(denom) < 1e-14)
            throw ZeroDerivative("newton_root: trace of the resolvent vanished");
        const Complex step = 1.0 / denom;
        eps += step;
        if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag()))
            throw NewtonStall("newton_root: iterate left the finite plane");
        if (std::abs(step) <= cfg.newton_tol * (1.0 + std::abs(eps))) return eps;
    }
    throw NewtonStall("newton_root: no convergence within newton_max steps");
}

} // namespace

Complex newton_root(const Matrix& H, Complex eps0, const OracleConfig& cfg) {
    return newton_suppressed(H, eps0, cfg, {});
}

GridRect gershgorin_box(const Matrix& H) {
    const std::size_t n = H.size();
    double re_lo = std::numeric_limits<double>::infinity(), re_hi = -re_lo;
    double im_lo = re_lo, im_hi = re_hi;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) radius += std::abs(H(i, j));
        const Complex c = H(i, i);
        re_lo = std::min(re_lo, c.real() - radius);
        re_hi = std::max(re_hi, c.real() + radius);
        im_lo = std::min(im_lo, c.imag() - radius);
        im_hi = std::max(im_hi, c.imag() + radius);
    }
    const double re_pad = 0.1 * std::max(re_hi - re_lo, 1.0);
    const double im_pad = 0.1 * std::max(im_hi - im_lo, 1.0);
    GridRect rect;
    rect.re_lo = re_lo - re_pad;
    rect.re_hi = re_hi + re_pad;
    rect.im_lo = im_lo - im_pad;
    rect.im_hi = im_hi + im_pad;
    return rect;
}

namespace {

// One inverse-iteration pass near a candidate eigenvalue; returns the
// residual |H v - eps v| / |v| of the refined vector.
double inverse_iteration_residual(const Matrix& H, Complex eps, double h_norm) {
    Complex sigma = eps;
    LUFactorization f = lu_factor(shifted(H, sigma));
    for (int nudges = 0; f.singular && nudges < 3; ++nudges) {
        sigma += Complex(1.0, 1.0) * (1e-10 * (1.0 + std::abs(eps)) * (nudges + 1.0));
        f = lu_factor(shifted(H, sigma));
    }
    if (f.singular) return std::numeric_limits<double>::infinity();

    Vector v = seeded_vector(H.size(), kDefaultStartSeed);
    double best = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 5; ++it) {
        v = lu_solve(f, v);
        const double nv = inf_norm(v);
        if (nv == 0.0 || !std::isfinite(nv)) break;
        for (Complex& z : v) z /= nv;
        const Vector hv = matvec(H, v);
        double resid = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            resid = std::max(resid, std::abs(hv[i] - eps * v[i]));
        best = std::min(best, resid);
        if (best <= 1e-10 * h_norm) break;
    }
    return best;
}

} // namespace

Spectrum eig_all_small(const Matrix& H, const OracleConfig& cfg) {
    const std::size_t n = H.size();
    GridRect rect;
    if (cfg.grid) {
        rect = *cfg.grid;
    } else {
        // Gershgorin boxes grow ~linearly with n while the spectrum does
        // not, so the automatic grid densifies with the dimension.
        rect = gershgorin_box(H);
        rect.re_samples = rect.im_samples = std::max(48, static_cast<int>(8 * n));
    }
    if (rect.re_samples < 2 || rect.im_samples < 2)
        throw Error("eig_all_small: grid sample counts must be >= 2");
    const int nx = rect.re_samples;
    const int ny = rect.im_samples;
    const double dx = (rect.re_hi - rect.re_lo) / (nx - 1);
    const double dy = (rect.im_hi - rect.im_lo) / (ny - 1);

    auto node = [&](int ix, int iy) {
        return Complex(rect.re_lo + ix * dx, rect.im_lo + iy * dy);
    };

    // The expensive part, evaluated once; suppression passes below only
    // correct these values.
    std::vector<double> logmag(static_cast<std::size_t>(nx) * ny);
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix)
            logmag[static_cast<std::size_t>(iy) * nx + ix] =
                char_logdet(H, node(ix, iy)).log_magnitude;

    const double h_norm = H.inf_norm();
    const double dedupe = cfg.dedupe_tol * std::max(1.0, h_norm);

    std::vector<Complex> roots;
    std::vector<double> residuals;

    // Each pass mines local minima of ln|det| with the roots found so far
    // divided out, then polishes each seed with the suppressed Newton.
    // A coarse grid over a loose Gershgorin box typically resolves only one
    // minimum per cluster; dividing out found roots exposes the rest.
    std::vector<double> corrected(logmag.size());
    for (std::size_t pass = 0; pass <= n && roots.size() < n; ++pass) {
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                const std::size_t idx = static_cast<std::size_t>(iy) * nx + ix;
                double c = logmag[idx];
                for (const Complex& r : roots) {
                    const double gap = std::abs(node(ix, iy) - r);
                    c -= std::log(std::max(gap, 1e-300));
                }
                corrected[idx] = c;
            }
        auto value = [&](int ix, int iy) { return corrected[static_cast<std::size_t>(iy) * nx + ix]; };

        std::vector<Complex> seeds;
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                const double here = value(ix, iy);
                bool minimal = true;
                for (int sy = -1; sy <= 1 && minimal; ++sy)
                    for (int sx = -1; sx <= 1 && minimal; ++sx) {
                        if (sx == 0 && sy == 0) continue;
                        const int jx = ix + sx, jy = iy + sy;
                        if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
                        if (value(jx, jy) < here) minimal = false;
                    }
                if (minimal) seeds.push_back(node(ix, iy));
            }

        bool progressed = false;
        for (const Complex& seed : seeds) {
            Complex root;
            try {
                root = newton_suppressed(H, seed, cfg, roots);
            } catch (const Error&) {
                continue; // stalled or saddle seed, other minima cover the root
            }
            bool duplicate = false;
            for (const Complex& existing : roots)
                if (std::abs(existing - root) <= dedupe) {
                    duplicate = true;
                    break;
                }
            if (duplicate) continue;
            const double resid = inverse_iteration_residual(H, root, h_norm);
            if (resid <= 1e-8 * h_norm) {
                roots.push_back(root);
                residuals.push_back(resid);
                progressed = true;
            }
        }
        if (!progressed) break;
    }

    // deterministic order
    std::vector<std::size_t> order(roots.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (roots[a].real() != roots[b].real()) return roots[a].real() < roots[b].real();
        return roots[a].imag() < roots[b].imag();
    });

    Spectrum spectrum;
    for (std::size_t idx : order) {
        spectrum.values.push_back(roots[idx]);
        spectrum.residuals.push_back(residuals[idx]);
    }
    spectrum.complete = spectrum.values.size() >= n;
    return spectrum;
}

double residual_norm(const Matrix& T, const Matrix& V, Complex lambda, Complex epsilon,
                     const Vector& u) {
    if (T.size() != V.size() || u.size() != T.size())
        throw DimensionMismatch("residual_norm: dimensions do not match");
    const double nu = inf_norm(u);
    if (nu == 0.0) throw ZeroVector("residual_norm: zero eigenvector");
    const Vector tu = matvec(T, u);
    const Vector vu = matvec(V, u);
    double resid = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        resid = std::max(resid, std::abs(tu[i] - lambda * vu[i] - epsilon * u[i]));
    return resid / nu;
}

} // namespace waxsolve
