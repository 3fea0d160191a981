#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "ucwfp/axioms.hpp"
#include "ucwfp/error.hpp"

using namespace ucwfp;

namespace {

// Accepts either the bare object or an experiment config holding it under `key`.
nlohmann::json section(const std::string& arg, const char* key) {
    nlohmann::json j = cli::read_json(arg);
    if (j.is_object() && j.contains(key) && j[key].is_object()) return j[key];
    return j;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        std::cerr << cli::error_json(e).dump() << '\n';
        return cli::exit_config;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ucwfp: row-construction fixed point iteration runner"};
    app.require_subcommand(1);

    std::string config;
    auto* run = app.add_subcommand("run", "Run one experiment config");
    run->add_option("config", config, "Experiment config (JSON, comments allowed)")->required();

    std::string dir;
    auto* suite = app.add_subcommand("suite", "Run every *.json config in a directory");
    suite->add_option("dir", dir, "Scenario directory")->required();

    std::string space_arg;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    double tol = -1.0;
    auto* axioms = app.add_subcommand("axioms", "Sampled metric, convexity and modulus checks for a space");
    axioms->add_option("space", space_arg, "Space config (file or inline JSON)")->required();
    axioms->add_option("--trials", trials, "Sampled configurations")->capture_default_str();
    axioms->add_option("--seed", seed, "Base seed")->capture_default_str();
    axioms->add_option("--tol", tol, "Allowed violation (default 1e-7 hyperboloid, 1e-9 otherwise)");

    std::string map_space_arg;
    std::string map_arg;
    std::uint64_t horizon = 20;
    std::uint64_t map_trials = 1000;
    double map_tol = 1e-9;
    auto* verify = app.add_subcommand("verify-map", "Sampled check of d(T^n x, T^n y) <= (1 + k_n) d(x, y)");
    verify->add_option("space", map_space_arg, "Space config (file or inline JSON)")->required();
    verify->add_option("map", map_arg, "Map config (file or inline JSON)")->required();
    verify->add_option("--horizon", horizon, "Largest power n")->capture_default_str();
    verify->add_option("--trials", map_trials, "Sampled pairs")->capture_default_str();
    verify->add_option("--seed", seed, "Base seed")->capture_default_str();
    verify->add_option("--tol", map_tol, "Allowed violation")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::exit_config;
    }

    if (*run) return cli::run_config_file(config, std::cout, std::cerr);
    if (*suite) return guarded([&] { return cli::run_suite(dir, std::cout, std::cerr); });
    if (*axioms) {
        return guarded([&] {
            SpacePtr space = make_space(section(space_arg, "space"));
            const double t = tol >= 0.0 ? tol : cli::default_axiom_tol(*space);
            const AxiomReport report = check_axioms(*space, trials, seed, t);
            std::cout << report.to_json().dump(2) << '\n';
            return report.pass() ? cli::exit_ok : cli::exit_monitor;
        });
    }
    if (*verify) {
        return guarded([&] {
            SpacePtr space = make_space(section(map_space_arg, "space"));
            MapPtr map = make_map(space, section(map_arg, "map"));
            const MapReport report = verify_asymptotic_bound(*map, *space, horizon, map_trials, seed);
            nlohmann::json j = report.to_json();
            j["map"] = map->describe();
            j["tol"] = map_tol;
            j["pass"] = report.pass(map_tol);
            std::cout << j.dump(2) << '\n';
            return report.pass(map_tol) ? cli::exit_ok : cli::exit_monitor;
        });
    }
    return cli::exit_config;
}
