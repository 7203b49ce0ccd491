#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "casipol/config.hpp"
#include "casipol/runner.hpp"

// Exit codes: 0 success, 1 usage/config error, 2 finished but at least one
// row missed the requested tolerance (rows are still written).

int main(int argc, char** argv) {
    CLI::App app{"casipol - vacuum-fluctuation forces in planar layered media"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    double rel_tol = 0.0;
    bool validate_only = false;
    bool reduced = false;
    int threads = 1;

    CLI::App* run = app.add_subcommand("run", "Evaluate the sweep described by a JSON job file");
    run->add_option("config", config_path, "Path to the JSON job description")->required();
    run->add_option("--out", out_override,
                    "Write CSV here (overrides the job's output.path; \"-\" = stdout)");
    run->add_option("--rel-tol", rel_tol, "Override the quadrature relative tolerance");
    run->add_flag("--validate-only", validate_only,
                  "Parse and validate the job, print a summary, and exit");
    run->add_flag("--reduced", reduced,
                  "Append dimensionless potential columns (atom-surface tasks)");
    run->add_option("--threads", threads, "Worker threads for sweep points")
        ->envname("CASIPOL_THREADS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (rel_tol != 0.0 && (rel_tol <= 0.0 || rel_tol >= 1.0)) {
        std::cerr << "error: --rel-tol must be in (0,1)\n";
        return 1;
    }
    if (threads < 1) {
        std::cerr << "error: --threads must be >= 1\n";
        return 1;
    }

    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return 1;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    casipol::JobConfig cfg;
    try {
        cfg = casipol::parse_config(buffer.str());
    } catch (const casipol::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }

    if (cfg.atom) {
        if (auto warning = cfg.atom->dilute_limit_warning())
            std::cerr << "warning: " << *warning << '\n';
    }

    std::string dest = !out_override.empty() ? out_override : cfg.output_path;

    if (validate_only) {
        std::cout << "task: " << casipol::task_name(cfg.task) << '\n'
                  << "sweep points: " << casipol::sweep_values(cfg.sweep).size() << '\n'
                  << "output: " << (dest.empty() || dest == "-" ? "(stdout)" : dest) << '\n'
                  << "config ok\n";
        return 0;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!dest.empty() && dest != "-") {
        file.open(dest, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file '" << dest << "'\n";
            return 1;
        }
        out = &file;
    }

    casipol::RunOptions opt;
    opt.rel_tol_override = rel_tol;
    opt.reduced = reduced;
    opt.threads = threads;

    try {
        casipol::RunReport report = casipol::run_job(cfg, opt, *out);
        if (report.unconverged > 0)
            std::cerr << "warning: " << report.unconverged << " of " << report.rows
                      << " rows missed the requested tolerance\n";
        return report.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
