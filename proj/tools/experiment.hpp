#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ucwfp/diagnostics.hpp"
#include "ucwfp/iteration.hpp"
#include "ucwfp/mappings.hpp"
#include "ucwfp/s_operator.hpp"
#include "ucwfp/spaces.hpp"

namespace ucwfp::cli {

enum ExitCode : int { exit_ok = 0, exit_config = 1, exit_monitor = 2, exit_budget = 3 };

/// Reads a JSON document, allowing // and /* */ comments. An argument that
/// starts with '{' is parsed as inline JSON instead of a path.
nlohmann::json read_json(const std::string& path_or_inline);

/// Moves z_ij a distance of about `offset` towards a sampled point after the
/// run, to produce a deliberately broken trajectory.
struct FaultInjection {
    std::size_t row = 0;
    std::size_t i = 0;
    double offset = 0.1;
    std::uint64_t seed = 0;
};

struct ExperimentConfig {
    std::string name;
    nlohmann::json space;
    nlohmann::json map;
    /// {point: <literal>} | {sample: <seed>} | {fixedPoint: <index>}
    nlohmann::json start;
    SMode s_mode = SMode::general;
    std::optional<double> fix_tol;
    StopRule stop;
    MonitorSet monitors;
    double cmp_band = 0.0;
    std::filesystem::path output_dir;
    std::uint64_t seed = 0;
    std::optional<FaultInjection> fault;

    /// Throws ConfigError. `fallback_name` is used when the document has no name.
    static ExperimentConfig from_json(const nlohmann::json& j, const std::string& fallback_name);
};

struct ExperimentResult {
    int exit_code = exit_ok;
    nlohmann::json summary;
    nlohmann::json verdicts;
    /// Compact metrics for suite reports.
    nlohmann::json key_metrics;
};

/// Builds everything, runs, checks and writes <dir>/<name>.trace.csv,
/// .summary.json and .verdicts.json. UCWFP_OUT, when set, replaces the
/// configured output directory. Throws ConfigError before anything runs.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Loads and runs one config file; every failure is mapped to an exit code and
/// reported as JSON on `err`.
int run_config_file(const std::string& path, std::ostream& out, std::ostream& err);

/// Runs every *.json in `dir` (sorted by file name) and writes suite.json to
/// the output directory (UCWFP_OUT or `dir`/out). Returns 0 when every
/// scenario exits 0, otherwise the most severe scenario code (2, then 1, then 3).
int run_suite(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

/// JSON diagnostic for errors: {"error": kind, "message": ...}.
nlohmann::json error_json(const std::exception& e);

/// Shared by `axioms` and the acceptance criteria: 1e-7 for the hyperboloid,
/// 1e-9 otherwise.
double default_axiom_tol(const Space& space);

} // namespace ucwfp::cli
