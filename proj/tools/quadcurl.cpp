/**
 * @file quadcurl.cpp
 * @brief Command-line driver for the verification suites and the numerical experiments.
 */
#include "quadcurl/errors.hpp"
#include "quadcurl/experiments.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

using namespace quadcurl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void write_csv(const std::string& path, const std::function<void(std::ostream&)>& writer)
{
    std::ofstream f(path);
    if (!f) {
        throw UsageError("cannot open output file " + path);
    }
    writer(f);
    std::cout << "wrote " << path << '\n';
}

int run(ExperimentConfig& config, bool perturb_e_row)
{
    if (config.rebuild_reference) {
        (void)reference_basis(true);
    }
    const std::string& ex = config.experiment;
    if (ex == "example1" || ex == "interp-study") {
        const auto rows = ex == "example1" ? run_example1(config) : run_interp_study(config);
        print_error_table(rows, std::cout);
        write_csv(config.out, [&](std::ostream& o) { write_error_csv(rows, o); });
        return kExitOk;
    }
    if (ex == "example2" || ex == "example3") {
        const EnergyStudy study = run_energy_study(config, ex == "example3");
        print_energy_table(study.rows, std::cout);
        std::cout << "energy monotone under refinement: " << (study.monotone ? "yes" : "no") << '\n';
        if (!study.negative_note.empty()) {
            std::cout << "negative energy difference: " << study.negative_note << '\n';
        }
        write_csv(config.out, [&](std::ostream& o) { write_energy_csv(study.rows, o); });
        return kExitOk;
    }
    std::vector<CheckResult> checks;
    if (ex == "verify-element") {
        VerificationOptions opt;
        opt.perturb_e_row = perturb_e_row;
        checks = run_verification(opt);
    } else {
        checks = run_conformity(config);
    }
    print_checks(checks, std::cout);
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"quadcurl: tetrahedral H(curl^2) elements for the quad-curl problem"};
    app.require_subcommand(1);
    ExperimentConfig config;
    std::vector<int> sizes;
    std::string bc = "trace";
    app.add_option("--n", sizes, "Mesh subdivisions, comma separated")->delimiter(',');
    app.add_option("--quad-degree", config.quad_degree, "Quadrature degree (default 14)");
    app.add_option("--tol", config.tol, "Relative residual tolerance of the solve");
    app.add_option("--precision", config.precision, "verify-exact or solve-float");
    app.add_option("--out", config.out, "CSV output path");
    app.add_flag("--rebuild-reference", config.rebuild_reference, "Rebuild the reference basis in exact arithmetic");
    app.add_option("--bc-mode", bc, "Boundary DOF rule: trace (default) or strict");
    bool quiet = false;
    app.add_flag("--quiet", quiet, "No progress messages");
    bool perturb = false;
    app.add_flag("--perturb-e-row", perturb, "verify-element negative control: corrupt one row of E");
    for (const char* name : {"example1", "example2", "example3", "verify-element", "conformity", "interp-study"}) {
        app.add_subcommand(name)->fallthrough();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    try {
        config.experiment = app.get_subcommands().front()->get_name();
        config.sizes = sizes.empty() ? default_sizes(config.experiment) : sizes;
        config.bc = parse_boundary_mode(bc);
        if (config.out.empty()) {
            config.out = config.experiment + ".csv";
        }
        if (!quiet) {
            config.log = &std::cerr;
        }
        validate(config);
        return run(config, perturb);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const OddSubdivision& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
