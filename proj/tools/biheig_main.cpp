#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "biheig/config.hpp"
#include "biheig/eigensolve.hpp"
#include "biheig/study.hpp"

namespace {

using namespace biheig;

TriangleMesh build_level(DomainKind domain, int level) {
    TriangleMesh mesh = build_initial_mesh(domain);
    for (int l = 0; l < level; ++l) mesh = refine_red(mesh);
    return mesh;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << content;
}

void maybe_dump_mesh(const RunConfig& cfg, const TriangleMesh& mesh) {
    if (cfg.dump_mesh.empty()) return;
    std::ofstream os(cfg.dump_mesh);
    if (!os) throw std::runtime_error("cannot write " + cfg.dump_mesh);
    export_mesh(mesh, os);
}

SweepOptions sweep_options(const RunConfig& cfg) {
    SweepOptions opts;
    opts.k = cfg.num_eigs;
    opts.eig_tol = cfg.eig_tol;
    opts.linear_tol = cfg.linear_tol;
    opts.seed = cfg.seed;
    return opts;
}

int cmd_solve(const RunConfig& cfg, const std::string& dump_matrix_prefix) {
    const TriangleMesh mesh = build_level(cfg.domain, cfg.levels);
    maybe_dump_mesh(cfg, mesh);

    const DiscreteOperator op = make_operator(mesh, cfg.method, cfg.linear_tol);
    if (!dump_matrix_prefix.empty()) {
        std::ofstream osa(dump_matrix_prefix + "_A.txt");
        dump_coo(op.A, osa);
        std::ofstream osm(dump_matrix_prefix + "_M.txt");
        dump_coo(op.M, osm);
    }

    EigenOptions eo;
    eo.k = cfg.num_eigs;
    eo.tol = cfg.eig_tol;
    eo.seed = cfg.seed;
    const EigenResult eig = eigs_smallest(op, eo);

    std::ostringstream table;
    table << "index,lambda,residual\n";
    char line[96];
    for (size_t i = 0; i < eig.lambdas.size(); ++i) {
        std::snprintf(line, sizeof line, "%zu,%.10g,%.3e\n", i + 1, eig.lambdas[i],
                      eig.residuals[i]);
        table << line;
    }

    std::printf("# level = %d, dof = %d, iterations = %d\n", mesh.level, op.n(), eig.iterations);
    if (eig.degenerate_at_k) {
        std::printf("# note: eigenvalues %d and %d are degenerate to 1e-12\n", cfg.num_eigs,
                    cfg.num_eigs + 1);
    }
    std::fputs(table.str().c_str(), stdout);
    if (!cfg.output.empty()) {
        write_file(cfg.output, echo_config(cfg) + table.str());
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    const ConvergenceReport report = run_sweep(cfg.domain, cfg.method, cfg.levels,
                                               sweep_options(cfg));
    if (cfg.dump_mesh.size()) maybe_dump_mesh(cfg, build_level(cfg.domain, cfg.levels));

    if (cfg.format == "markdown") {
        const std::string text = emit_markdown(report);
        if (cfg.output.empty()) {
            std::fputs(text.c_str(), stdout);
        } else {
            write_file(cfg.output, echo_config(cfg) + "\n" + text);
        }
    } else {
        const std::string eigs = emit_csv_eigs(report);
        const std::string rates = emit_csv_rates(report);
        if (cfg.output.empty()) {
            std::fputs(eigs.c_str(), stdout);
            std::fputs("\n", stdout);
            std::fputs(rates.c_str(), stdout);
        } else {
            write_file(cfg.output + "_eigenvalues.csv", echo_config(cfg) + eigs);
            write_file(cfg.output + "_rates.csv", echo_config(cfg) + rates);
        }
    }
    if (!report.complete) {
        std::fprintf(stderr, "sweep aborted early: eigensolver failed; partial report emitted\n");
        return 1;
    }
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    const Comparison cmp = compare_methods(cfg.domain, cfg.levels, sweep_options(cfg));
    if (cfg.dump_mesh.size()) maybe_dump_mesh(cfg, build_level(cfg.domain, cfg.levels));

    const std::string text = cfg.format == "markdown" ? emit_markdown(cmp) : emit_csv(cmp);
    std::fputs(text.c_str(), stdout);
    for (size_t i = 0; i < cmp.spurious.size(); ++i) {
        if (cmp.spurious[i]) {
            std::printf("# spurious candidate: usual lambda%zu = %.10g\n", i + 1,
                        cmp.lambda_usual[i]);
        }
    }
    if (!cfg.output.empty()) {
        write_file(cfg.output, echo_config(cfg) + text);
    }
    return 0;
}

void add_common_options(CLI::App* sub, RunConfig& cfg, std::string& config_path) {
    sub->add_option("--config", config_path,
                    "config file with `key = value` lines; flags given here override it");
    sub->add_option_function<std::string>(
           "--domain",
           [&cfg](const std::string& s) {
               cfg.domain = domain_from_name(s);
               cfg.domain_set = true;
           },
           "domain: square|lshape|slit|ring")
        ->required(false);
    sub->add_option_function<std::string>(
        "--method", [&cfg](const std::string& s) { cfg.method = method_from_name(s); },
        "method: modified|usual");
    sub->add_option("--levels", cfg.levels, "refinement level (solve/compare) or max level (sweep)");
    sub->add_option("--num-eigs", cfg.num_eigs, "number of eigenvalues");
    sub->add_option("--eig-tol", cfg.eig_tol, "eigenpair residual tolerance");
    sub->add_option("--linear-tol", cfg.linear_tol, "Poisson solver relative residual");
    sub->add_option("--seed", cfg.seed, "seed for the iteration's starting block");
    sub->add_option("--output", cfg.output, "output path (stdout when omitted)");
    sub->add_option("--format", cfg.format, "output format: csv|markdown");
    sub->add_option("--dump-mesh", cfg.dump_mesh, "write the mesh in plain-text format to this path");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string config_path;
    std::string dump_matrix_prefix;

    // Apply the config file before flag parsing so flags override it.
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc) {
                load_config_file(argv[i + 1], cfg);
            } else if (arg.rfind("--config=", 0) == 0) {
                load_config_file(arg.substr(9), cfg);
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    CLI::App app{"Biharmonic (Navier) eigenvalues on non-convex polygons via Poisson solves"};
    app.require_subcommand(1);
    CLI::App* solve = app.add_subcommand("solve", "eigenvalues and residuals on one level");
    CLI::App* sweep = app.add_subcommand("sweep", "refinement study with rate indicators");
    CLI::App* compare = app.add_subcommand("compare", "modified vs usual mixed method table");
    for (CLI::App* sub : {solve, sweep, compare}) add_common_options(sub, cfg, config_path);
    solve->add_option("--dump-matrix", dump_matrix_prefix,
                      "write stiffness/mass in coordinate text format to <prefix>_A.txt/_M.txt");

    try {
        app.parse(argc, argv);
        validate_config(cfg);
        std::fputs(echo_config(cfg).c_str(), stdout);
        if (solve->parsed()) return cmd_solve(cfg, dump_matrix_prefix);
        if (sweep->parsed()) return cmd_sweep(cfg);
        return cmd_compare(cfg);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
