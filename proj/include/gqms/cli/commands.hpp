// commands.hpp — Pipeline orchestration and subcommands of the gqms tool

#pragma once

#include <cstdint>
#include <ostream>
#include <optional>
#include <string>
#include <vector>

#include "gqms/cli/io.hpp"
#include "gqms/errors.hpp"
#include "gqms/gap.hpp"
#include "gqms/models.hpp"
#include "gqms/standardize.hpp"

namespace gqms::cli {

inline constexpr const char* kToolVersion = "1.0.0";

// Exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitModel = 2;
inline constexpr int kExitNumerical = 3;

struct Options {
    double tol_stability = 1e-3;
    double tol_temperature = 1e-8;
    double tol_rank = 1e-9;
    int precision = 6;
    bool json = false;
    std::uint64_t seed = 20240601;
};

// drift/diffusion -> stability -> invariant state -> Williamson ->
// standardization -> gap report
struct Analysis {
    GeneratorParams params;
    StabilityReport stability;
    GaussianState state;
    StandardizedGenerator standardized;
    gap::GapReport gaps;
};

Analysis run_analysis(const GeneratorParams& params, const Options& opts);
json analysis_to_json(const Analysis& a, const Options& opts);
void print_analysis(std::ostream& os, const Analysis& a, const Options& opts);

// Each command writes its report to out and diagnostics to err and returns an
// exit code: 0 ok, 1 usage/parse, 2 model assumption, 3 numerical failure
// (fuzz also returns 3 when a property check is violated).
int cmd_analyze(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_boson_chain(const models::BosonChainSpec& spec, const Options& opts, std::ostream& out,
                    std::ostream& err);

struct FuzzOptions {
    int count = 500;
    std::vector<int> dims = {1, 2, 3};
    int threads = 0;          // 0: hardware concurrency
    bool decay_fit = true;
    bool a_t_check = true;
};

// One property violation found by the fuzz suite.
struct Violation {
    std::string check;
    double value = 0.0;
    double limit = 0.0;
};

struct InstanceResult {
    int index = 0;
    Index d = 0;
    json instance;                // generator file of the sampled parameters
    std::vector<Violation> violations;
    std::vector<std::string> borderline;
    std::string error;            // exception text, if the pipeline threw
    bool kms_exists = false;
    bool gns_exists = false;
    // worst value per check name
    std::vector<std::pair<std::string, double>> metrics;
};

// Deterministic: the stream of instance i depends only on (seed, i).
InstanceResult fuzz_instance(int index, Index d, std::uint64_t seed, const Options& opts, const FuzzOptions& fopts);
std::vector<InstanceResult> run_fuzz(const Options& opts, const FuzzOptions& fopts);
int cmd_fuzz(const Options& opts, const FuzzOptions& fopts, std::ostream& out, std::ostream& err);

struct EvolveOptions {
    std::vector<double> times;
    std::optional<std::string> state_path;
    bool fit = false;
    EvolutionMethod method = EvolutionMethod::Automatic;
};

int cmd_evolve(const std::string& path, const EvolveOptions& eopts, const Options& opts, std::ostream& out,
               std::ostream& err);

// Writes the generator file of a built-in model: "ou", "two-mode" or
// "boson-chain".
int cmd_model(const std::string& name, const Options& opts, std::ostream& out, std::ostream& err);

// Runs f and maps exceptions to exit codes, writing the message (and the
// residual of the failed check) to err.
template <typename F>
int guarded(std::ostream& err, F&& f)
{
    try {
        return f();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ModelError& e) {
        err << "model assumption violated: " << e.what() << " (residual " << e.residual() << ")\n";
        return kExitModel;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << " (residual " << e.residual() << ")\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace gqms::cli
