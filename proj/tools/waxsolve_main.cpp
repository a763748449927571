// waxsolve command line: solve / scan / oracle / verify / generate.
//
// Exit codes: 0 converged or success, 2 non-convergence, 3 input or parse
// error, 4 internal numerical failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>

#include "waxsolve/deflation.hpp"
#include "waxsolve/matrix_market.hpp"
#include "waxsolve/oracle.hpp"
#include "waxsolve/perturbation.hpp"
#include "waxsolve/random_gen.hpp"
#include "waxsolve/report_io.hpp"
#include "waxsolve/run_config.hpp"
#include "waxsolve/search.hpp"

namespace {

using namespace waxsolve;

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumerical = 4;

struct VectorSpec {
    bool ones = true;
    std::uint64_t seed = kDefaultStartSeed;
};

VectorSpec parse_vector_spec(const std::string& text) {
    VectorSpec spec;
    if (text == "ones") return spec;
    if (text.rfind("seeded:", 0) == 0) {
        spec.ones = false;
        try {
            spec.seed = std::stoull(text.substr(7));
        } catch (const std::exception&) {
            throw ParseError("bad vector spec '" + text + "' (expected ones or seeded:<seed>)");
        }
        return spec;
    }
    throw ParseError("bad vector spec '" + text + "' (expected ones or seeded:<seed>)");
}

Vector build_vector(const VectorSpec& spec, std::size_t n) {
    return spec.ones ? ones_vector(n) : seeded_vector(n, spec.seed);
}

struct ProblemArgs {
    std::string t_path;
    std::string v_path;
    double lambda_ex = 0.0;
    std::string config_path;
    std::string r_spec = "ones";
    std::string u0_spec = "seeded:" + std::to_string(kDefaultStartSeed);
};

void add_problem_options(CLI::App* cmd, ProblemArgs& args, bool with_start_specs = true) {
    cmd->add_option("--t", args.t_path, "kinetic matrix file (MatrixMarket array)")->required();
    cmd->add_option("--v", args.v_path, "potential matrix file (MatrixMarket array)")->required();
    cmd->add_option("--lambda", args.lambda_ex, "target real coupling (> 0)")->required();
    cmd->add_option("--config", args.config_path, "JSON run configuration");
    if (with_start_specs) {
        cmd->add_option("--r", args.r_spec, "reference vector: ones | seeded:<seed>");
        cmd->add_option("--u0", args.u0_spec, "start vector: ones | seeded:<seed>");
    }
}

RunConfig load_config(const ProblemArgs& args) {
    if (args.config_path.empty()) return RunConfig{};
    return load_run_config(args.config_path);
}

EigenProblem load_problem(const ProblemArgs& args) {
    EigenProblem p;
    p.T = read_matrix(args.t_path);
    p.V = read_matrix(args.v_path);
    p.lambda_ex = args.lambda_ex;
    p.r = build_vector(parse_vector_spec(args.r_spec), p.T.size());
    p.validate();
    return p;
}

void apply_start_spec(RunConfig& cfg, const ProblemArgs& args) {
    const VectorSpec u0 = parse_vector_spec(args.u0_spec);
    cfg.search.start.ones = u0.ones;
    cfg.search.start.seed = u0.seed;
}

int cmd_solve(const ProblemArgs& args, bool perturb, int excited, const std::string& out_path) {
    RunConfig cfg = load_config(args);
    apply_start_spec(cfg, args);
    const EigenProblem problem = load_problem(args);

    std::vector<SolveReport> reports;
    if (excited > 0)
        reports = solve_excited(problem, excited, cfg.search, cfg.inner);
    else if (perturb)
        reports.push_back(solve_real_ground(problem, cfg.perturbation, cfg.search, cfg.inner));
    else
        reports.push_back(solve_ground(problem, cfg.search, cfg.inner));

    write_reports(out_path, reports);

    bool all_converged = true;
    for (const SolveReport& rep : reports) {
        all_converged = all_converged && rep.converged;
        for (const std::string& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    }
    if (!all_converged) {
        std::cerr << "solve did not converge\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

int cmd_scan(const ProblemArgs& args, bool magnitude_sweep, double fixed, double from, double to,
             double step, const std::string& out_path) {
    RunConfig cfg = load_config(args);
    apply_start_spec(cfg, args);
    const EigenProblem problem = load_problem(args);
    const ScanCurve curve =
        magnitude_sweep
            ? scan_magnitude(problem, fixed, from, to, step, cfg.inner, cfg.search.start)
            : scan_phase(problem, fixed, from, to, step, cfg.inner, cfg.search.start);
    write_scan_csv(out_path, curve);
    return kExitOk;
}

int cmd_oracle(const ProblemArgs& args, const std::string& out_path) {
    const RunConfig cfg = load_config(args);
    const EigenProblem problem = load_problem(args);
    const Matrix h = pencil(problem.T, problem.V, problem.lambda_ex);
    const Spectrum spectrum = eig_all_small(h, cfg.oracle);
    if (!spectrum.complete)
        std::cerr << "warning: fewer roots than the dimension were located\n";
    write_spectrum_csv(out_path, spectrum);
    return kExitOk;
}

int cmd_verify(const ProblemArgs& args, const std::string& report_path) {
    const EigenProblem problem = load_problem(args);
    const std::vector<SolveReport> reports = read_reports(report_path);
    if (reports.empty()) {
        std::cerr << "verify: empty report\n";
        return kExitInput;
    }

    const double residual_bound = 1e-8 * problem.T.inf_norm();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const SolveReport& rep = reports[i];
        if (!rep.converged) {
            std::cerr << "verify: state " << i << " is marked non-converged\n";
            return kExitNotConverged;
        }
        if (rep.u.size() != problem.T.size()) {
            std::cerr << "verify: state " << i << " eigenvector length differs\n";
            return kExitInput;
        }
        const double residual =
            residual_norm(problem.T, problem.V, rep.lambda_achieved, rep.epsilon, rep.u);
        if (!(residual <= residual_bound)) {
            std::cerr << "verify: state " << i << " residual " << residual << " above bound "
                      << residual_bound << "\n";
            return kExitNotConverged;
        }
        // recompute the coupling from the report's own eigenvector
        Vector u = rep.u;
        const Complex norm = inner(problem.r, u);
        if (std::abs(norm) == 0.0) {
            std::cerr << "verify: state " << i << " eigenvector orthogonal to r\n";
            return kExitNotConverged;
        }
        for (Complex& z : u) z /= norm;
        Complex lambda_recomputed;
        try {
            Resolvent res(problem.T, rep.epsilon);
            lambda_recomputed = lambda_of(res, problem.V, problem.r, u);
        } catch (const Error& e) {
            std::cerr << "verify: state " << i << ": " << e.what() << "\n";
            return kExitNotConverged;
        }
        const double lambda_err = std::abs(lambda_recomputed - rep.lambda_achieved);
        if (!(lambda_err <= 1e-7 * std::max(1.0, std::abs(rep.lambda_achieved)))) {
            std::cerr << "verify: state " << i << " coupling mismatch " << lambda_err << "\n";
            return kExitNotConverged;
        }
    }
    return kExitOk;
}

int cmd_generate(std::size_t n, std::uint64_t seed, const std::string& kind,
                 const std::string& out_t, const std::string& out_v) {
    MatrixKind mk;
    if (kind == "complex-general")
        mk = MatrixKind::complex_general;
    else if (kind == "real-symmetric")
        mk = MatrixKind::real_symmetric;
    else
        throw ParseError("unknown kind '" + kind + "' (complex-general | real-symmetric)");
    const auto [t, v] = gen_random(n, seed, mk);
    write_matrix(out_t, t);
    write_matrix(out_v, v);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green's-method fixed-point solver for non-Hermitian coupled eigenproblems"};
    app.require_subcommand(1);

    ProblemArgs solve_args;
    bool perturb = false;
    int excited = 0;
    std::string solve_out;
    CLI::App* solve = app.add_subcommand("solve", "find the lowest-lying state");
    add_problem_options(solve, solve_args);
    solve->add_flag("--perturb", perturb, "perturb V by i*delta*I and shift the eigenvalue back");
    solve->add_option("--excited", excited, "also deflate and solve this many excited states");
    solve->add_option("--out", solve_out, "output report (JSON)")->required();

    ProblemArgs scanm_args;
    double scanm_phase = 0.0, scanm_from = 0.0, scanm_to = 0.0, scanm_step = 0.0;
    std::string scanm_out;
    CLI::App* scanm = app.add_subcommand("scan-magnitude", "sweep |eps| at fixed phase(eps)");
    add_problem_options(scanm, scanm_args);
    scanm->add_option("--phase", scanm_phase, "phase(eps) in radians")->required();
    scanm->add_option("--from", scanm_from, "first |eps|")->required();
    scanm->add_option("--to", scanm_to, "last |eps|")->required();
    scanm->add_option("--step", scanm_step, "|eps| increment")->required();
    scanm->add_option("--out", scanm_out, "output curve (CSV)")->required();

    ProblemArgs scanp_args;
    double scanp_mag = 0.0, scanp_from = 0.0, scanp_to = 0.0, scanp_step = 0.0;
    std::string scanp_out;
    CLI::App* scanp = app.add_subcommand("scan-phase", "sweep phase(eps) at fixed |eps|");
    add_problem_options(scanp, scanp_args);
    scanp->add_option("--mag", scanp_mag, "|eps|")->required();
    scanp->add_option("--from", scanp_from, "first phase (radians)")->required();
    scanp->add_option("--to", scanp_to, "last phase (radians)")->required();
    scanp->add_option("--step", scanp_step, "phase increment (radians)")->required();
    scanp->add_option("--out", scanp_out, "output curve (CSV)")->required();

    ProblemArgs oracle_args;
    std::string oracle_out;
    CLI::App* oracle = app.add_subcommand("oracle", "independent eigenvalue list via det roots");
    add_problem_options(oracle, oracle_args, /*with_start_specs=*/false);
    oracle->add_option("--out", oracle_out, "output roots (CSV)")->required();

    ProblemArgs verify_args;
    std::string verify_report;
    CLI::App* verify = app.add_subcommand("verify", "recheck a solve report against the matrices");
    verify->add_option("--report", verify_report, "report file (JSON)")->required();
    add_problem_options(verify, verify_args);

    std::size_t gen_n = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_kind, gen_out_t, gen_out_v;
    CLI::App* generate = app.add_subcommand("generate", "write a reproducible random (T, V) pair");
    generate->add_option("--n", gen_n, "dimension")->required();
    generate->add_option("--seed", gen_seed, "seed")->required();
    generate->add_option("--kind", gen_kind, "complex-general | real-symmetric")->required();
    generate->add_option("--out-t", gen_out_t, "output T file")->required();
    generate->add_option("--out-v", gen_out_v, "output V file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (solve->parsed()) {
            if (perturb && excited > 0)
                throw ParseError("--perturb and --excited cannot be combined");
            return cmd_solve(solve_args, perturb, excited, solve_out);
        }
        if (scanm->parsed())
            return cmd_scan(scanm_args, true, scanm_phase, scanm_from, scanm_to, scanm_step,
                            scanm_out);
        if (scanp->parsed())
            return cmd_scan(scanp_args, false, scanp_mag, scanp_from, scanp_to, scanp_step,
                            scanp_out);
        if (oracle->parsed()) return cmd_oracle(oracle_args, oracle_out);
        if (verify->parsed()) return cmd_verify(verify_args, verify_report);
        if (generate->parsed()) return cmd_generate(gen_n, gen_seed, gen_kind, gen_out_t, gen_out_v);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DimensionMismatch& e) {
        // at this surface a dimension mismatch means inconsistent input files
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NoBracket& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotConverged;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "internal failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitInput;
}
