#include "waxsolve/deflation.hpp"

#include <cmath>
#include <optional>

#include "waxsolve/random_gen.hpp"

namespace waxsolve {

namespace {

constexpr double kPairingFloor = 1e-10;
constexpr double kOverlapBound = 1e-6;
constexpr double kDistinctFactor = 1e-6;

// bilinear product a^T b, no conjugation
Complex bilinear(const Vector& a, const Vector& b) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void normalize_inf(Vector& v) {
    const double nv = inf_norm(v);
    if (nv == 0.0) throw ZeroVector("deflation: zero eigenvector");
    for (Complex& z : v) z /= nv;
}

} // namespace

Vector solve_left(const EigenProblem& problem, Complex pair_epsilon, const InnerConfig& cfg_inner) {
    problem.validate();
    const Matrix tt = problem.T.transposed();
    const Matrix vt = problem.V.transposed();

    std::optional<Resolvent> res;
    try {
        res.emplace(tt, pair_epsilon);
    } catch (const SingularResolvent&) {
        Complex nudged = pair_epsilon * (1.0 + 1e-8);
        if (std::abs(pair_epsilon) < 1e-12 * (1.0 + tt.inf_norm()))
            nudged = pair_epsilon + Complex(0.0, 1e-8 * (1.0 + tt.inf_norm()));
        res.emplace(tt, nudged);
    }
    const Vector u0 = seeded_vector(problem.r.size(), kDefaultStartSeed);
    InnerResult out;
    try {
        out = run_fixed_point(*res, vt, problem.r, u0, cfg_inner);
    } catch (const DegenerateDenominator&) {
        // the left eigenvector can be orthogonal to the caller's reference
        // vector; retry with a seeded one
        const Vector r2 = seeded_vector(problem.r.size(), kReseedSeed + 2);
        out = run_fixed_point(*res, vt, r2, u0, cfg_inner);
    }
    if (!out.converged)
        throw DeflationBreakdown("left eigenvector iteration did not converge");
    return out.u;
}

Vector deflate_vector(const Vector& x, const std::vector<EigenPair>& pairs) {
    Vector y = x;
    for (const EigenPair& pair : pairs) {
        if (std::abs(pair.pairing) <= kPairingFloor)
            throw DefectivePair("deflate_vector: pairing magnitude at or below 1e-10");
        if (pair.right.size() != y.size() || pair.left.size() != y.size())
            throw DimensionMismatch("deflate_vector: pair dimension differs");
        const Complex coeff = bilinear(pair.left, y) / pair.pairing;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= coeff * pair.right[i];
    }
    return y;
}

EigenPair make_eigen_pair(const EigenProblem& problem, const SolveReport& report,
                          const InnerConfig& cfg_inner) {
    if (!report.converged)
        throw DeflationBreakdown("cannot build a deflation pair from a non-converged state");
    EigenPair pair;
    pair.epsilon = report.epsilon;
    pair.right = report.u;
    normalize_inf(pair.right);
    pair.left = solve_left(problem, report.epsilon, cfg_inner);
    normalize_inf(pair.left);
    pair.pairing = bilinear(pair.left, pair.right);
    if (std::abs(pair.pairing) <= kPairingFloor)
        throw DefectivePair("make_eigen_pair: defective left/right pairing");
    return pair;
}

std::vector<SolveReport> solve_excited(const EigenProblem& problem, int k, const SearchConfig& cfg,
                                       const InnerConfig& cfg_inner, DeflationMode mode) {
    problem.validate();
    if (k < 1) throw Error("solve_excited: k must be >= 1");
    if (static_cast<std::size_t>(k) + 1 > problem.T.size())
        throw DimensionMismatch("solve_excited: k+1 exceeds the problem dimension");

    std::vector<SolveReport> reports;
    reports.push_back(solve_ground(problem, cfg, cfg_inner));
    const double distinct_floor = kDistinctFactor * problem.T.inf_norm();

    std::vector<EigenPair> pairs;
    for (int j = 1; j <= k; ++j) {
        if (!reports.back().converged) break;
        pairs.push_back(make_eigen_pair(problem, reports.back(), cfg_inner));

        const std::vector<EigenPair> snapshot = pairs;
        Projector project = [snapshot](Vector& x) { x = deflate_vector(x, snapshot); };
        SolveReport rep = solve_ground(problem, cfg, cfg_inner, project,
                                       mode == DeflationMode::start_vector_only);

        if (rep.converged) {
            for (const SolveReport& prev : reports)
                if (std::abs(rep.epsilon - prev.epsilon) <= distinct_floor)
                    throw DeflationBreakdown(
                        "deflated search converged onto an already-found state");
            Vector nu = rep.u;
            normalize_inf(nu);
            for (const EigenPair& pair : pairs)
                if (std::abs(bilinear(pair.left, nu)) > kOverlapBound)
                    throw DeflationBreakdown(
                        "iterate overlap with a deflated direction grew above 1e-6");
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

} // namespace waxsolve
