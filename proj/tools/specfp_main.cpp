// Command-line front end: certification, solving and re-verification of
// stationary states of the nonlocal superdiffusive systems.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "specfp/config.hpp"
#include "specfp/errors.hpp"
#include "specfp/oracle.hpp"
#include "specfp/report.hpp"
#include "specfp/sampling.hpp"
#include "specfp/transforms.hpp"

namespace {

using namespace specfp;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitFailed = 2;  // admissibility / contraction / convergence failure

struct CliOverrides {
    double tol = -1.0;
    int max_iter = -1;
    std::int64_t seed = -1;
    std::string out_dir;
    bool override_uncertified = false;
};

void apply_overrides(RunConfig& run, const CliOverrides& o) {
    if (o.tol > 0.0) run.solver.tol = o.tol;
    if (o.max_iter > 0) run.solver.max_iter = o.max_iter;
    if (o.seed >= 0) run.solver.seed = static_cast<std::uint64_t>(o.seed);
    if (!o.out_dir.empty()) run.out_dir = o.out_dir;
    if (o.override_uncertified) run.solver.override_uncertified = true;
}

struct Certification {
    std::vector<AdmissibilityReport> admissibility;
    MultiplierReport multipliers;
    ContractionCertificate certificate;
    NontrivialityResult nontriviality;
    bool all_admissible = true;
};

Certification certify(const RunConfig& run) {
    Certification c;
    for (const auto& comp : run.system.components) {
        c.admissibility.push_back(
            check_admissibility(comp.kernel, run.system.geometry, run.admissibility_tolerance));
        c.all_admissible = c.all_admissible && c.admissibility.back().pass;
    }
    c.multipliers = multiplier_norms(run.system.kernels(), run.system.geometry);
    c.certificate = certify_contraction(run.system, {}, 2000, run.solver.seed);
    c.nontriviality = check_nontriviality(run.system);
    return c;
}

void emit_report(const RunConfig& run, const Certification& c, const std::string& filename) {
    auto j = make_cert_report(run, c.admissibility, c.multipliers, c.certificate, c.nontriviality);
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!run.out_dir.empty()) {
        std::filesystem::create_directories(run.out_dir);
        const auto path = std::filesystem::path(run.out_dir) / filename;
        std::ofstream out(path);
        if (!out) throw IoError("cannot write " + path.string());
        out << text;
    }
}

int run_check(const std::string& config_path, const CliOverrides& o) {
    RunConfig run = load_config(config_path);
    apply_overrides(run, o);
    Certification c = certify(run);
    emit_report(run, c, "cert.json");
    return (c.all_admissible && c.certificate.certified) ? kExitOk : kExitFailed;
}

int run_norms(const std::string& config_path, const CliOverrides& o) {
    RunConfig run = load_config(config_path);
    apply_overrides(run, o);
    MultiplierReport mult = multiplier_norms(run.system.kernels(), run.system.geometry);
    std::cout << multipliers_to_json(mult).dump(2) << "\n";
    return kExitOk;
}

int run_solve(const std::string& config_path, const CliOverrides& o) {
    RunConfig run = load_config(config_path);
    apply_overrides(run, o);

    StateVector init(run.system.geometry.lattice, run.system.n_total());
    if (run.solver.init == "random")
        init = random_state(run.system.geometry.lattice, run.system.n_total(), run.solver.seed);

    Solution sol = solve_fixed_point(run.system, init, run.solver.tol, run.solver.max_iter,
                                     run.solver.override_uncertified);

    Certification c = certify(run);
    emit_report(run, c, "cert.json");
    std::cout << "iterations " << sol.trace.iterations() << "\n"
              << "final_increment "
              << (sol.trace.increments.empty() ? 0.0 : sol.trace.increments.back()) << "\n"
              << "residual " << sol.residual_value << "\n"
              << "h2_norm " << h2_norm(sol.state) << "\n";

    const std::string dir = run.out_dir.empty() ? "." : run.out_dir;
    std::filesystem::create_directories(dir);
    write_solution_csv((std::filesystem::path(dir) / "solution.csv").string(), sol.state);
    write_spectral_csv((std::filesystem::path(dir) / "solution_spectrum.csv").string(), sol.state);
    write_trace_csv((std::filesystem::path(dir) / "trace.csv").string(), sol.trace);

    return sol.converged ? kExitOk : kExitFailed;
}

int run_residual(const std::string& config_path, const std::string& solution_path,
                 const CliOverrides& o) {
    RunConfig run = load_config(config_path);
    apply_overrides(run, o);

    auto grids = read_solution_csv(solution_path, run.system.geometry, run.system.n_total());
    StateVector state(run.system.geometry.lattice, run.system.n_total());
    for (int k = 0; k < run.system.n_total(); ++k)
        state.components[static_cast<std::size_t>(k)] = forward_transform(grids[static_cast<std::size_t>(k)]);

    const double r = residual(state, run.system);
    std::cout << "residual " << r << "\n"
              << "threshold " << 10.0 * run.solver.tol << "\n";
    return r <= 10.0 * run.solver.tol ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral fixed-point solver and certification tool for nonlocal "
                 "superdiffusive reaction-diffusion systems"};
    app.require_subcommand(1);

    std::string config_path, solution_path;
    CliOverrides o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "configuration file (JSON)")->required();
        cmd->add_option("--tol", o.tol, "solver tolerance override");
        cmd->add_option("--max-iter", o.max_iter, "iteration cap override");
        cmd->add_option("--seed", o.seed, "seed for randomized probes");
        cmd->add_option("--out", o.out_dir, "output directory");
        cmd->add_flag("--override-uncertified", o.override_uncertified,
                      "iterate even without a contraction certificate");
    };

    CLI::App* check = app.add_subcommand("check", "admissibility + contraction certification");
    add_common(check);
    CLI::App* solve = app.add_subcommand("solve", "solve the stationary system");
    add_common(solve);
    CLI::App* norms = app.add_subcommand("norms", "multiplier report only");
    add_common(norms);
    CLI::App* resid = app.add_subcommand("residual", "re-verify a stored solution");
    add_common(resid);
    resid->add_option("solution", solution_path, "solution CSV written by solve")->required();

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(check)) return run_check(config_path, o);
        if (app.got_subcommand(solve)) return run_solve(config_path, o);
        if (app.got_subcommand(norms)) return run_norms(config_path, o);
        if (app.got_subcommand(resid)) return run_residual(config_path, solution_path, o);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ExprError& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return kExitFailed;
    } catch (const SolverError& e) {
        std::cerr << "solver: " << e.what() << "\n";
        return kExitFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
