// gqms.cpp — Command-line front end: analyze, boson-chain, fuzz, evolve, model

#include <cmath>
#include <iostream>

#include <CLI11.hpp>

#include "gqms/cli/commands.hpp"

int main(int argc, char** argv)
{
    using namespace gqms;
    using namespace gqms::cli;

    CLI::App app{"Analysis of Gaussian quantum Markov semigroups from their parameter matrices"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Options opts;
    app.add_option("--tol-stability", opts.tol_stability, "Required stability margin: abscissa < -margin")
        ->capture_default_str()->check(CLI::NonNegativeNumber);
    app.add_option("--tol-temperature", opts.tol_temperature, "Relative tolerance for equal inverse temperatures")
        ->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--tol-rank", opts.tol_rank, "Relative singular-value threshold for rank decisions")
        ->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--precision", opts.precision, "Significant digits in human-readable output")
        ->capture_default_str()->check(CLI::Range(1, 17));
    app.add_flag("--json", opts.json, "Emit the machine-readable JSON report");
    app.add_option("--seed", opts.seed, "Seed for random sampling")->capture_default_str();

    std::string input;
    auto* analyze = app.add_subcommand("analyze", "Full pipeline report for a generator file");
    analyze->add_option("file", input, "Generator file (JSON)")->required();

    models::BosonChainSpec chain;
    auto* boson = app.add_subcommand("boson-chain", "Three-mode boson chain: pipeline vs closed form");
    boson->add_option("--omega", chain.omega, "Nearest-neighbour coupling")->capture_default_str();
    boson->add_option("--beta1", chain.beta1, "Inverse temperature of the bath on mode 1")->capture_default_str();
    boson->add_option("--beta3", chain.beta3, "Inverse temperature of the bath on mode 3")->capture_default_str();

    FuzzOptions fuzz;
    auto* fz = app.add_subcommand("fuzz", "Property checks over seeded random stable generators");
    fz->add_option("--count", fuzz.count, "Number of instances")->capture_default_str()->check(CLI::NonNegativeNumber);
    fz->add_option("--dims", fuzz.dims, "Mode counts, cycled over the instances")->delimiter(',')->capture_default_str();
    fz->add_option("--threads", fuzz.threads, "Worker threads (0: hardware concurrency)")->capture_default_str();
    bool no_decay = false, no_a_t = false;
    fz->add_flag("--no-decay-fit", no_decay, "Skip the covariance decay-rate fit");
    fz->add_flag("--no-a-t", no_a_t, "Skip the A_t factorization quadrature");

    EvolveOptions evolve;
    std::string state_path;
    std::string method = "auto";
    auto* ev = app.add_subcommand("evolve", "Mean and covariance along a time grid");
    ev->add_option("file", input, "Generator file (JSON)")->required();
    ev->add_option("--times", evolve.times, "Comma-separated times")->delimiter(',')->required();
    ev->add_option("--state", state_path, "Initial state file (default: zero mean, identity covariance)");
    ev->add_flag("--fit", evolve.fit, "Fit the covariance decay rate");
    ev->add_option("--method", method, "auto, closed or quadrature")
        ->capture_default_str()->check(CLI::IsMember({"auto", "closed", "quadrature"}));

    std::string model_name;
    auto* model = app.add_subcommand("model", "Print the generator file of a built-in model");
    model->add_option("name", model_name, "ou, two-mode or boson-chain")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (analyze->parsed()) {
        return cmd_analyze(input, opts, std::cout, std::cerr);
    }
    if (boson->parsed()) {
        return cmd_boson_chain(chain, opts, std::cout, std::cerr);
    }
    if (fz->parsed()) {
        fuzz.decay_fit = !no_decay;
        fuzz.a_t_check = !no_a_t;
        return cmd_fuzz(opts, fuzz, std::cout, std::cerr);
    }
    if (ev->parsed()) {
        if (!state_path.empty()) {
            evolve.state_path = state_path;
        }
        evolve.method = method == "closed"       ? EvolutionMethod::ClosedForm
                        : method == "quadrature" ? EvolutionMethod::Quadrature
                                                 : EvolutionMethod::Automatic;
        return cmd_evolve(input, evolve, opts, std::cout, std::cerr);
    }
    if (model->parsed()) {
        return cmd_model(model_name, opts, std::cout, std::cerr);
    }
    return kExitUsage;
}
