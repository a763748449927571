#include "waxsolve/search.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <utility>

#include "waxsolve/oracle.hpp"
#include "waxsolve/random_gen.hpp"

namespace waxsolve {

namespace {

constexpr double kResidualFactor = 1e-8;
// |lambda| band (relative to lambda_ex) the phase pass may wander through
// before the magnitude has to be re-pinned.
constexpr double kDriftBand = 0.2;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointEval {
    Complex eps{};
    Complex lambda{kNaN, kNaN};
    Vector u;
    int iterations = 0;
    bool converged = false;
};

// Scan samples that sit on a resolvent pole are recorded as failed so that
// bracketing steps past them; refinement probes nudge through transparently.
enum class PoleRecording { mark_failed, use_nudged };

class Evaluator {
public:
    Evaluator(const EigenProblem& p, const InnerConfig& inner, double nudge, Projector project,
              ScanCurve* trace, bool project_start_only = false, StartVectorSpec start = {})
        : problem_(p),
          inner_(inner),
          nudge_(nudge),
          project_(std::move(project)),
          trace_(trace),
          project_start_only_(project_start_only),
          start_(start) {}

    PointEval at(Complex eps, PoleRecording pole_mode) {
        PointEval ev;
        ev.eps = eps;
        bool pole = false;
        try {
            InnerResult res;
            try {
                res = solve(eps);
            } catch (const SingularResolvent&) {
                pole = true;
                ev.eps = eps * (1.0 + nudge_);
                res = solve(ev.eps);
            }
            ev.lambda = res.lambda;
            ev.iterations = res.iterations;
            ev.converged = res.converged && std::isfinite(res.lambda.real()) &&
                           std::isfinite(res.lambda.imag());
            if (ev.converged) {
                ev.u = res.u;
                warm_ = res.u;
            }
        } catch (const SingularResolvent&) {
            ev.converged = false;
        } catch (const DegenerateDenominator&) {
            ev.converged = false;
        }
        if (pole && pole_mode == PoleRecording::mark_failed) ev.converged = false;
        record(ev);
        return ev;
    }

private:
    InnerResult solve(Complex eps) {
        const std::size_t n = problem_.T.size();
        if (warm_.size() == n) {
            // Mix a fixed small component into the warm start. A warm vector
            // that is an exact eigenvector of a subdominant branch would
            // otherwise have no component along the dominant one and the
            // iteration would lock onto the wrong branch.
            if (mix_.size() != n) mix_ = seeded_vector(n, kReseedSeed + 1);
            scratch_ = warm_;
            const double scale = 1e-6 * inf_norm(warm_);
            for (std::size_t i = 0; i < n; ++i) scratch_[i] += scale * mix_[i];
        } else {
            scratch_ = start_.ones ? ones_vector(n) : seeded_vector(n, start_.seed);
        }
        Resolvent res(problem_.T, eps);
        return run_fixed_point(res, problem_.V, problem_.r, scratch_, inner_, project_,
                               project_start_only_);
    }

    void record(const PointEval& ev) {
        if (!trace_) return;
        ScanSample s;
        s.eps_polar = to_polar(ev.eps);
        s.lambda_polar = to_polar(ev.lambda);
        s.inner_iterations = ev.iterations;
        s.converged = ev.converged;
        trace_->samples.push_back(s);
    }

    const EigenProblem& problem_;
    InnerConfig inner_;
    double nudge_;
    Projector project_;
    ScanCurve* trace_;
    bool project_start_only_;
    StartVectorSpec start_;
    Vector warm_;
    Vector scratch_;
    Vector mix_;
};

// ---------------------------------------------------------------------------
// one-dimensional guarded secant over an objective that may fail per-sample
// ---------------------------------------------------------------------------

struct SecantPoint {
    double x = 0.0;
    double f = 0.0;
    PointEval ev;
};

using ObjectiveFn = std::function<std::optional<SecantPoint>(double)>;

struct RefineSpec {
    double abs_tol = 0.0;
    int max_secant_steps = 30;
    double domain_lo = -std::numeric_limits<double>::infinity();
    double domain_hi = std::numeric_limits<double>::infinity();
    int max_subdiv_levels = 3;
    // sign-change pairs with |f| beyond this at either end are rejected
    // (keeps the phase objective away from fake zero crossings at the
    // +-pi branch cut of arg)
    double pair_guard = std::numeric_limits<double>::infinity();
};

struct RefineOutcome {
    SecantPoint root;
    int steps = 0;
};

RefineOutcome guarded_secant(const ObjectiveFn& F, SecantPoint a, SecantPoint b,
                             const RefineSpec& spec) {
    bool have_bracket = false;
    double blo = 0.0, bhi = 0.0, fblo = 0.0;
    auto try_bracket = [&](const SecantPoint& p, const SecantPoint& q) {
        if (have_bracket || !(p.f * q.f < 0.0)) return;
        have_bracket = true;
        if (p.x < q.x) {
            blo = p.x;
            bhi = q.x;
            fblo = p.f;
        } else {
            blo = q.x;
            bhi = p.x;
            fblo = q.f;
        }
    };
    try_bracket(a, b);

    SecantPoint best = (std::abs(a.f) < std::abs(b.f)) ? a : b;
    SecantPoint x0 = std::move(a), x1 = std::move(b);
    int steps = 0;

    while (true) {
        if (std::abs(best.f) <= spec.abs_tol) return {std::move(best), steps};
        if (steps >= spec.max_secant_steps)
            throw SecantStall("secant did not reach tolerance within max_secant_steps");

        double cand;
        const double denom = x1.f - x0.f;
        if (denom != 0.0 && std::isfinite(denom))
            cand = x1.x - x1.f * (x1.x - x0.x) / denom;
        else if (have_bracket)
            cand = 0.5 * (blo + bhi);
        else
            throw SecantStall("flat objective with no bracket");
        if (!std::isfinite(cand) || (have_bracket && (cand <= blo || cand >= bhi)))
            cand = have_bracket ? 0.5 * (blo + bhi)
                                : x1.x + (x1.x - x0.x); // keep extrapolating
        if (cand < spec.domain_lo) cand = spec.domain_lo;
        if (cand > spec.domain_hi) cand = spec.domain_hi;
        if (cand == x1.x || cand == x0.x) {
            if (!have_bracket) throw SecantStall("secant stalled on a repeated point");
            cand = 0.5 * (blo + bhi);
            if (cand == x1.x || cand == x0.x) return {std::move(best), steps}; // interval exhausted
        }

        std::optional<SecantPoint> next = F(cand);
        ++steps;
        if (!next) {
            // failed inner solve at the probe; step once toward the previous point
            const double alt = cand + 0.25 * (x1.x - cand);
            next = F(alt);
            ++steps;
            if (!next) throw SecantStall("objective evaluation kept failing near the root");
        }

        if (have_bracket && next->x > blo && next->x < bhi) {
            if (std::signbit(next->f) == std::signbit(fblo)) {
                blo = next->x;
                fblo = next->f;
            } else {
                bhi = next->x;
            }
        } else if (!have_bracket) {
            try_bracket(x1, *next);
            try_bracket(x0, *next);
        }

        x0 = std::move(x1);
        x1 = std::move(*next);
        if (std::abs(x1.f) < std::abs(best.f)) best = x1;
    }
}

// Refines an interior extremum of the objective that approaches zero
// without crossing it (the level set tangent to the sweep ray, a double
// root). Successive parabolic interpolation on the triplet around the
// extremum; switches to the guarded secant if a probe ever crosses zero.
RefineOutcome refine_tangency(const ObjectiveFn& F, SecantPoint a, SecantPoint b, SecantPoint c,
                              const RefineSpec& spec) {
    const double sigma = (b.f > 0.0) ? 1.0 : -1.0; // minimize sigma * f
    SecantPoint best = b;
    int steps = 0;
    while (steps < spec.max_secant_steps) {
        if (std::abs(best.f) <= spec.abs_tol) return {std::move(best), steps};
        if (c.x - a.x <= 1e-15 * (1.0 + std::abs(b.x)))
            throw BracketFailure("objective bottoms out short of zero");

        const double d1 = b.x - a.x, d2 = b.x - c.x;
        const double num = d1 * d1 * (b.f - c.f) - d2 * d2 * (b.f - a.f);
        const double den = d1 * (b.f - c.f) - d2 * (b.f - a.f);
        double cand = (den != 0.0 && std::isfinite(num / den)) ? b.x - 0.5 * num / den : b.x;
        if (!(cand > a.x) || !(cand < c.x) || cand == b.x) {
            // bisect the larger half when the parabola is unhelpful
            cand = (b.x - a.x > c.x - b.x) ? 0.5 * (a.x + b.x) : 0.5 * (b.x + c.x);
        }
        std::optional<SecantPoint> next = F(cand);
        ++steps;
        if (!next) {
            cand = 0.5 * (cand + b.x);
            next = F(cand);
            ++steps;
            if (!next) throw SecantStall("objective evaluation kept failing near the extremum");
        }
        if (sigma * next->f < 0.0) {
            // crossed zero after all; finish with a bracketed secant
            RefineOutcome out = guarded_secant(F, b, *next, spec);
            out.steps += steps;
            return out;
        }
        if (std::abs(next->f) < std::abs(best.f)) best = *next;
        if (next->x < b.x) {
            if (sigma * next->f < sigma * b.f) {
                c = b;
                b = std::move(*next);
            } else {
                a = std::move(*next);
            }
        } else {
            if (sigma * next->f < sigma * b.f) {
                a = b;
                b = std::move(*next);
            } else {
                c = std::move(*next);
            }
        }
    }
    if (std::abs(best.f) <= spec.abs_tol) return {std::move(best), steps};
    throw SecantStall("tangency refinement did not reach tolerance");
}

// Bracket hunt over [x1, x2] by bisection-style subdivision, then secant.
// Handles a tangent level set via parabolic refinement and falls back to an
// open secant when the objective is monotone without a sign change (the
// root lies just outside the window).
RefineOutcome refine_core(const ObjectiveFn& F, double x1, double x2, const RefineSpec& spec) {
    if (x2 < x1) std::swap(x1, x2);
    std::map<double, SecantPoint> samples;
    auto add = [&](double x) {
        if (samples.count(x)) return;
        if (auto s = F(x)) samples.emplace(x, std::move(*s));
    };

    for (int level = 0; level <= spec.max_subdiv_levels; ++level) {
        if (level == 0) {
            add(x1);
            add(x2);
        } else {
            const int pieces = 1 << level;
            for (int i = 1; i < pieces; i += 2) add(x1 + (x2 - x1) * i / pieces);
        }
        for (auto& [x, s] : samples)
            if (std::abs(s.f) <= spec.abs_tol) return {s, 0};
        for (auto it = samples.begin(); it != samples.end();) {
            auto next = std::next(it);
            if (next == samples.end()) break;
            const SecantPoint& pa = it->second;
            const SecantPoint& pb = next->second;
            if (pa.f * pb.f < 0.0 &&
                std::max(std::abs(pa.f), std::abs(pb.f)) < spec.pair_guard)
                return guarded_secant(F, pa, pb, spec);
            it = next;
        }
    }

    if (samples.size() >= 3) {
        // interior |f| minimum with both neighbours above it: treat as a
        // tangency candidate
        auto best = samples.begin();
        for (auto it = samples.begin(); it != samples.end(); ++it)
            if (std::abs(it->second.f) < std::abs(best->second.f)) best = it;
        if (best != samples.begin() && std::next(best) != samples.end() &&
            std::abs(best->second.f) < spec.pair_guard)
            return refine_tangency(F, std::prev(best)->second, best->second,
                                   std::next(best)->second, spec);
    }

    if (samples.size() >= 2) {
        bool increasing = true, decreasing = true;
        for (auto it = samples.begin(); std::next(it) != samples.end(); ++it) {
            const double fa = it->second.f, fb = std::next(it)->second.f;
            increasing = increasing && fb >= fa;
            decreasing = decreasing && fb <= fa;
        }
        if (increasing || decreasing) {
            // monotone without a sign change: extrapolate from the two
            // samples closest to zero
            auto first = samples.begin();
            auto second = std::next(first);
            for (auto it = second; it != samples.end(); ++it)
                if (std::abs(it->second.f) < std::abs(first->second.f)) {
                    second = first;
                    first = it;
                }
            if (first == second) second = std::next(samples.begin());
            return guarded_secant(F, second->second, first->second, spec);
        }
    }
    throw BracketFailure("no sign change of the objective across the bracket");
}

RefineResult to_refine_result(const RefineOutcome& out) {
    RefineResult r;
    r.value = out.root.x;
    r.secant_steps = out.steps;
    r.epsilon = out.root.ev.eps;
    r.lambda = out.root.ev.lambda;
    r.u = out.root.ev.u;
    return r;
}

ObjectiveFn magnitude_objective(Evaluator& ev, double phase, double lambda_ex) {
    return [&ev, phase, lambda_ex](double m) -> std::optional<SecantPoint> {
        PointEval pe = ev.at(std::polar(m, phase), PoleRecording::use_nudged);
        if (!pe.converged) return std::nullopt;
        const double f = std::abs(pe.lambda) - lambda_ex;
        return SecantPoint{m, f, std::move(pe)};
    };
}

ObjectiveFn phase_objective(Evaluator& ev, double mag) {
    return [&ev, mag](double p) -> std::optional<SecantPoint> {
        PointEval pe = ev.at(std::polar(mag, p), PoleRecording::use_nudged);
        if (!pe.converged) return std::nullopt;
        return SecantPoint{p, to_polar(pe.lambda).phase, std::move(pe)};
    };
}

RefineSpec magnitude_spec(const SearchConfig& cfg, double lambda_ex, double hi) {
    RefineSpec spec;
    spec.abs_tol = cfg.tol_mag * lambda_ex;
    spec.max_secant_steps = cfg.max_secant_steps;
    spec.domain_lo = 1e-12 * (1.0 + hi);
    spec.domain_hi = 2.0 * hi;
    spec.max_subdiv_levels = 3;
    return spec;
}

RefineSpec phase_spec(const SearchConfig& cfg, double center) {
    RefineSpec spec;
    spec.abs_tol = cfg.tol_phase;
    spec.max_secant_steps = cfg.max_secant_steps;
    spec.domain_lo = center - 1.25 * std::numbers::pi;
    spec.domain_hi = center + 1.25 * std::numbers::pi;
    spec.max_subdiv_levels = 4;
    spec.pair_guard = 0.5 * std::numbers::pi;
    return spec;
}

ScanCurve scan_impl(const EigenProblem& problem, bool sweep_magnitude, double fixed, double lo,
                    double hi, double step, const InnerConfig& cfg_inner,
                    const StartVectorSpec& start) {
    problem.validate();
    if (!(step > 0.0)) throw Error("scan: step must be positive");
    if (!(lo < hi)) throw Error("scan: range must satisfy lo < hi");
    ScanCurve curve;
    Evaluator ev(problem, cfg_inner, SearchConfig{}.singular_nudge, {}, &curve, false, start);
    const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) {
        const double x = lo + static_cast<double>(i) * step;
        const Complex eps = sweep_magnitude ? std::polar(x, fixed) : std::polar(fixed, x);
        ev.at(eps, PoleRecording::mark_failed);
    }
    return curve;
}

} // namespace

ScanCurve scan_magnitude(const EigenProblem& problem, double phase_eps, double mag_lo,
                         double mag_hi, double step, const InnerConfig& cfg_inner,
                         const StartVectorSpec& start) {
    return scan_impl(problem, true, phase_eps, mag_lo, mag_hi, step, cfg_inner, start);
}

ScanCurve scan_phase(const EigenProblem& problem, double eps_mag, double phase_lo, double phase_hi,
                     double step, const InnerConfig& cfg_inner, const StartVectorSpec& start) {
    return scan_impl(problem, false, eps_mag, phase_lo, phase_hi, step, cfg_inner, start);
}

RefineResult refine_magnitude(const EigenProblem& problem, double phase_eps, double m1, double m2,
                              const SearchConfig& cfg, const InnerConfig& cfg_inner) {
    problem.validate();
    Evaluator ev(problem, cfg_inner, cfg.singular_nudge, {}, nullptr);
    const double hi = 1.1 * (problem.T.inf_norm() + problem.lambda_ex * problem.V.inf_norm());
    return to_refine_result(refine_core(magnitude_objective(ev, phase_eps, problem.lambda_ex), m1,
                                        m2, magnitude_spec(cfg, problem.lambda_ex, hi)));
}

RefineResult refine_phase(const EigenProblem& problem, double eps_mag, double p1, double p2,
                          const SearchConfig& cfg, const InnerConfig& cfg_inner) {
    problem.validate();
    Evaluator ev(problem, cfg_inner, cfg.singular_nudge, {}, nullptr);
    return to_refine_result(refine_core(phase_objective(ev, eps_mag), p1, p2,
                                        phase_spec(cfg, 0.5 * (p1 + p2))));
}

namespace {

struct BracketCandidate {
    double phase = 0.0;
    double m_lo = 0.0, m_hi = 0.0;
    bool direct = false;   // scan landed within tolerance already
    PointEval hit;
};

class GroundSolver {
public:
    GroundSolver(const EigenProblem& problem, const SearchConfig& cfg, const InnerConfig& inner,
                 const Projector& project, bool project_start_only, SolveReport& rep)
        : problem_(problem),
          cfg_(cfg),
          lambda_ex_(problem.lambda_ex),
          hi_(1.1 * (problem.T.inf_norm() + problem.lambda_ex * problem.V.inf_norm())),
          tol_abs_(cfg.tol_mag * problem.lambda_ex),
          ev_(problem, inner, cfg.singular_nudge, project, &rep.trace, project_start_only,
              cfg.start),
          rep_(rep) {}

    void run() {
        bool any_candidate = false;
        const double pi8 = std::numbers::pi / 8.0;
        for (int k : kRayOrder) {
            const double phase = cfg_.phase_start + k * pi8;
            for (BracketCandidate& cand : hunt_ray(phase)) {
                any_candidate = true;
                if (attempt(cand)) return;
            }
        }
        if (!any_candidate)
            throw NoBracket("initial magnitude scan never brought |lambda| near lambda_ex");
        rep_.converged = false;
    }

private:
    static constexpr int kRayOrder[16] = {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7, 8};

    bool mag_ok(const Complex& lambda) const {
        return std::abs(std::abs(lambda) - lambda_ex_) <= tol_abs_;
    }
    bool phase_ok(const Complex& lambda) const {
        return std::abs(to_polar(lambda).phase) <= cfg_.tol_phase;
    }

    // Incremental sweep of one ray; returns every sign-change bracket in
    // scan order (the grid extends downward geometrically when the upward
    // sweep yields nothing).
    std::vector<BracketCandidate> hunt_ray(double phase) {
        std::vector<BracketCandidate> found;
        std::optional<std::pair<double, double>> prev;
        for (double m = cfg_.eps_mag_start; m <= hi_ && found.size() < 6; m += cfg_.eps_mag_step) {
            PointEval pe = ev_.at(std::polar(m, phase), PoleRecording::mark_failed);
            if (!pe.converged) continue;
            const double f = std::abs(pe.lambda) - lambda_ex_;
            if (std::abs(f) <= tol_abs_) {
                found.push_back({phase, m, m, true, std::move(pe)});
                prev.reset();
                continue;
            }
            if (prev && std::signbit(f) != std::signbit(prev->second))
                found.push_back({phase, prev->first, m, false, {}});
            prev = {m, f};
        }
        if (!found.empty()) return found;

        prev.reset();
        for (int i = 0; i <= 24 && found.empty(); ++i) {
            const double m = std::ldexp(cfg_.eps_mag_start, -i);
            PointEval pe = ev_.at(std::polar(m, phase), PoleRecording::mark_failed);
            if (!pe.converged) continue;
            const double f = std::abs(pe.lambda) - lambda_ex_;
            if (std::abs(f) <= tol_abs_) {
                found.push_back({phase, m, m, true, std::move(pe)});
                break;
            }
            if (prev && std::signbit(f) != std::signbit(prev->second))
                found.push_back({phase, m, prev->first, false, {}});
            prev = {m, f};
        }
        return found;
    }

    // One full alternation starting from a magnitude bracket. Returns true
    // (and finalizes the report) on joint convergence.
    bool attempt(BracketCandidate& cand) {
        double phase = cand.phase;
        double mag;
        PointEval cur;
        int steps_used = 0;

        try {
            if (cand.direct) {
                mag = cand.m_lo;
                cur = std::move(cand.hit);
            } else {
                RefineOutcome out =
                    refine_core(magnitude_objective(ev_, phase, lambda_ex_), cand.m_lo, cand.m_hi,
                                magnitude_spec(cfg_, lambda_ex_, hi_));
                steps_used = std::max(steps_used, out.steps);
                mag = out.root.x;
                cur = std::move(out.root.ev);
            }

            int cycles = 0;
            while (!joint_ok(cur) && cycles < cfg_.max_outer_cycles) {
                ++cycles;

                // phase pass: zero of phase(lambda) if reachable, else drift
                if (!phase_pass(mag, phase, cur, steps_used)) break;
                if (joint_ok(cur)) break;

                // magnitude pass: re-pin |lambda| = lambda_ex on the new ray
                if (!mag_pass(phase, mag, cur, steps_used)) break;
            }
            rep_.outer_cycles = cycles;

            // Endgame: the polar alternation is degenerate when the target
            // ray is tangent to the |lambda| level set; lambda(eps) itself
            // is analytic and well conditioned there, so a short complex
            // Newton run closes the last stretch. The gate covers the drift
            // band so a stalled drift still gets polished.
            if (!joint_ok(cur) && cur.converged &&
                std::abs(cur.lambda - lambda_ex_) <= 0.5 * lambda_ex_)
                newton_polish(cur);

            if (joint_ok(cur)) {
                finalize(cur, steps_used);
                return rep_.converged;
            }
        } catch (const BracketFailure&) {
        } catch (const SecantStall&) {
        }
        return false;
    }

    bool joint_ok(const PointEval& cur) const {
        return cur.converged && mag_ok(cur.lambda) && phase_ok(cur.lambda);
    }

    // Newton on lambda(eps) - lambda_ex over complex eps; the derivative
    // comes from a finite difference (lambda is analytic on a branch).
    void newton_polish(PointEval& cur) {
        Complex eps = cur.eps;
        Complex lambda = cur.lambda;
        PointEval best = cur;
        double best_err = std::abs(lambda - lambda_ex_);
        for (int it = 0; it < 20; ++it) {
            const double h = 1e-7 * (1.0 + std::abs(eps));
            const PointEval probe = ev_.at(eps + h, PoleRecording::use_nudged);
            if (!probe.converged) break;
            const Complex deriv = (probe.lambda - lambda) / h;
            if (!(std::abs(deriv) > 1e-14)) break;
            const Complex step = (Complex(lambda_ex_, 0.0) - lambda) / deriv;
            eps += step;
            const PointEval next = ev_.at(eps, PoleRecording::use_nudged);
            if (!next.converged) break;
            lambda = next.lambda;
            const double err = std::abs(lambda - lambda_ex_);
            if (err < best_err) {
                best = next;
                best_err = err;
            } else if (it > 2) {
                break; // stopped improving; likely bounced off a branch switch
            }
            if (joint_ok(best) || std::abs(step) <= 1e-16 * (1.0 + std::abs(eps))) break;
        }
        cur = std::move(best);
    }

    bool phase_pass(double mag, double& phase, PointEval& cur, int& steps_used) {
        const ObjectiveFn g = phase_objective(ev_, mag);
        for (double halfwidth : {0.5 * std::numbers::pi, std::numbers::pi}) {
            RefineSpec spec = phase_spec(cfg_, phase);
            try {
                RefineOutcome out = refine_core(g, phase - halfwidth, phase + halfwidth, spec);
                steps_used = std::max(steps_used, out.steps);
                phase = out.root.x;
                cur = std::move(out.root.ev);
                return true;
            } catch (const BracketFailure&) {
            } catch (const SecantStall&) {
            }
        }
        // no zero in reach: drift toward it within the |lambda| band and let
        // the caller re-pin the magnitude
        for (double halfwidth : {0.5 * std::numbers::pi, std::numbers::pi})
            if (drift_phase(g, mag, halfwidth, phase, cur)) return true;
        return false;
    }

    // The "previous step is repeated" branch: no zero of phase(lambda) at
    // this |eps|, so move the phase toward smaller |phase(lambda)| while
    // |lambda| stays within the drift band, then let the caller re-pin the
    // magnitude.
    bool drift_phase(const ObjectiveFn& g, double mag, double halfwidth, double& phase,
                     PointEval& cur) {
        const double band = kDriftBand * lambda_ex_;
        const int pieces = 8;
        std::optional<SecantPoint> best;
        double best_f = std::abs(to_polar(cur.lambda).phase);
        for (int i = -pieces; i <= pieces; ++i) {
            if (i == 0) continue;
            const double p = phase + halfwidth * i / pieces;
            auto s = g(p);
            if (!s) continue;
            if (std::abs(std::abs(s->ev.lambda) - lambda_ex_) > band) continue;
            if (std::abs(s->f) < best_f - 1e-15) {
                best_f = std::abs(s->f);
                best = std::move(*s);
            }
        }
        if (!best) return false;
        phase = best->x;
        cur = std::move(best->ev);
        return true;
    }

    bool mag_pass(double phase, double& mag, PointEval& cur, int& steps_used) {
        const ObjectiveFn f = magnitude_objective(ev_, phase, lambda_ex_);
        RefineSpec spec = magnitude_spec(cfg_, lambda_ex_, hi_);
        const double h1 = std::max(cfg_.eps_mag_step, 0.1 * (1.0 + mag));
        const std::pair<double, double> windows[] = {
            {std::max(spec.domain_lo, mag - h1), mag + h1},
            {std::max(spec.domain_lo, 0.5 * mag), std::min(hi_, 1.5 * mag + cfg_.eps_mag_step)},
            {spec.domain_lo, hi_}, // full window resolves tangent level sets
        };
        int window_index = 0;
        for (const auto& [lo, hi] : windows) {
            if (++window_index == 3) spec.max_subdiv_levels = 4;
            try {
                RefineOutcome out = refine_core(f, lo, hi, spec);
                steps_used = std::max(steps_used, out.steps);
                mag = out.root.x;
                cur = std::move(out.root.ev);
                return true;
            } catch (const BracketFailure&) {
            } catch (const SecantStall&) {
            }
        }
        // last resort: rescan the whole ray
        for (BracketCandidate& cand : hunt_ray(phase)) {
            if (cand.direct) {
                mag = cand.m_lo;
                cur = std::move(cand.hit);
                return true;
            }
            try {
                RefineOutcome out = refine_core(f, cand.m_lo, cand.m_hi, spec);
                steps_used = std::max(steps_used, out.steps);
                mag = out.root.x;
                cur = std::move(out.root.ev);
                return true;
            } catch (const BracketFailure&) {
            } catch (const SecantStall&) {
            }
        }
        return false;
    }

    void finalize(const PointEval& cur, int steps_used) {
        rep_.epsilon = cur.eps;
        rep_.lambda_achieved = cur.lambda;
        rep_.u = cur.u;
        rep_.max_secant_steps_used = std::max(rep_.max_secant_steps_used, steps_used);
        rep_.residual = residual_norm(problem_.T, problem_.V, cur.lambda, cur.eps, cur.u);
        const bool residual_ok = rep_.residual <= kResidualFactor * problem_.T.inf_norm();
        rep_.converged = residual_ok;
        if (!residual_ok)
            rep_.warnings.push_back("residual above bound at the accepted point");
    }

    const EigenProblem& problem_;
    const SearchConfig& cfg_;
    double lambda_ex_;
    double hi_;
    double tol_abs_;
    Evaluator ev_;
    SolveReport& rep_;
};

} // namespace

SolveReport solve_ground(const EigenProblem& problem, const SearchConfig& cfg,
                         const InnerConfig& cfg_inner, const Projector& project,
                         bool project_start_only) {
    problem.validate();
    if (!(cfg.eps_mag_start > 0.0) || !(cfg.eps_mag_step > 0.0) || !(cfg.tol_mag > 0.0) ||
        !(cfg.tol_phase > 0.0) || cfg.max_outer_cycles <= 0 || cfg.max_secant_steps <= 0 ||
        !(cfg.singular_nudge > 0.0))
        throw Error("search: config values must be positive");
    SolveReport rep;
    GroundSolver solver(problem, cfg, cfg_inner, project, project_start_only, rep);
    solver.run();
    return rep;
}

SolveReport solve_ground(const EigenProblem& problem, const SearchConfig& cfg,
                         const InnerConfig& cfg_inner) {
    return solve_ground(problem, cfg, cfg_inner, Projector{}, false);
}

} // namespace waxsolve
