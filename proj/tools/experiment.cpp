#include "experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ucwfp/error.hpp"
#include "ucwfp/random.hpp"

namespace ucwfp::cli {

namespace fs = std::filesystem;

nlohmann::json read_json(const std::string& path_or_inline) {
    const auto first = path_or_inline.find_first_not_of(" \t\r\n");
    try {
        if (first != std::string::npos && path_or_inline[first] == '{')
            return nlohmann::json::parse(path_or_inline, nullptr, true, true);
        std::ifstream in(path_or_inline);
        if (!in) throw ConfigError("cannot open '" + path_or_inline + "'");
        return nlohmann::json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("'" + path_or_inline + "': " + e.what());
    }
}

nlohmann::json error_json(const std::exception& e) {
    std::string kind = "internal";
    if (const auto* err = dynamic_cast<const Error*>(&e)) kind = std::string(err->kind());
    nlohmann::json j{{"error", kind}, {"message", e.what()}};
    if (const auto* mf = dynamic_cast<const MonitorFailure*>(&e)) j["bundle"] = mf->bundle();
    return j;
}

double default_axiom_tol(const Space& space) { return space.model() == "hyperboloid" ? 1e-7 : 1e-9; }

namespace {

template <class T>
T get_as(const nlohmann::json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("'") + key + "': " + e.what());
    }
}

std::optional<double> optional_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_number()) throw ConfigError(std::string("'") + key + "' must be a number or null");
    return j[key].get<double>();
}

StopRule parse_stop(const nlohmann::json& j, double b) {
    StopRule r = StopRule::defaults(b);
    if (j.is_null()) return r;
    if (!j.is_object()) throw ConfigError("'stop' must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "maxRows" && key != "residualTol" && key != "gapTol" && key != "gapWindow")
            throw ConfigError("unknown key 'stop." + key + "'");
    }
    if (j.contains("maxRows")) {
        if (j["maxRows"].is_null()) r.max_rows.reset();
        else if (j["maxRows"].is_number_unsigned()) r.max_rows = j["maxRows"].get<std::uint64_t>();
        else if (j["maxRows"].is_number() && j["maxRows"].get<double>() >= 0 &&
                 j["maxRows"].get<double>() == static_cast<double>(static_cast<std::uint64_t>(j["maxRows"].get<double>())))
            r.max_rows = static_cast<std::uint64_t>(j["maxRows"].get<double>());
        else throw ConfigError("'stop.maxRows' must be a nonnegative integer or null");
    }
    if (j.contains("residualTol")) r.residual_tol = optional_number(j, "residualTol");
    if (j.contains("gapTol")) r.gap_tol = optional_number(j, "gapTol");
    if (j.contains("gapWindow")) r.gap_window = get_as<std::size_t>(j, "gapWindow");
    r.validate();
    return r;
}

Point resolve_start(const ExperimentConfig& c, const Space& space, const AsymptoticMap& map) {
    const nlohmann::json& s = c.start;
    if (s.is_null()) return space.sample(mix_seed(c.seed, 0));
    if (!s.is_object() || s.size() != 1) throw ConfigError("'start' must hold exactly one of point, sample, fixedPoint");
    if (s.contains("point")) {
        Point p;
        try {
            p = space.from_json(s["point"]);
        } catch (const Error& e) {
            throw ConfigError(std::string("start point: ") + e.what());
        }
        if (space.excess(p) > space.tolerance()) throw ConfigError("start point lies outside the space");
        return p;
    }
    if (s.contains("sample")) return space.sample(get_as<std::uint64_t>(s, "sample"));
    if (s.contains("fixedPoint")) {
        const auto idx = get_as<std::size_t>(s, "fixedPoint");
        const auto& fixed = map.known_fixed_points();
        if (idx >= fixed.size())
            throw ConfigError("start.fixedPoint " + std::to_string(idx) + " but the map declares " +
                              std::to_string(fixed.size()) + " fixed point(s)");
        return fixed[idx];
    }
    throw ConfigError("'start' must hold one of point, sample, fixedPoint");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

std::string trace_csv(const Trajectory& traj) {
    std::ostringstream os;
    os << "j,m,case,step,residual";
    for (std::size_t f = 0; f < traj.fixed_points().size(); ++f) os << ",dist_p" << f;
    os << '\n';
    for (std::size_t j = 1; j <= traj.rows(); ++j) {
        const RowRecord& r = traj.row(j);
        os << j << ',' << r.m << ',' << r.tag.str() << ',' << fmt(r.step) << ',';
        if (r.residual) os << fmt(*r.residual);
        for (double d : traj.node(r.tail).to_fixed) os << ',' << fmt(d);
        os << '\n';
    }
    return os.str();
}

fs::path output_dir_for(const ExperimentConfig& c, const std::optional<fs::path>& override_dir) {
    if (override_dir) return *override_dir;
    if (const char* env = std::getenv("UCWFP_OUT"); env != nullptr && *env != '\0') return env;
    return c.output_dir;
}

ExperimentResult run_impl(const ExperimentConfig& c, const std::optional<fs::path>& override_dir) {
    SpacePtr space = make_space(c.space);
    MapPtr map = make_map(space, c.map);
    SOptions opt;
    opt.mode = c.s_mode;
    opt.fix_tol = c.fix_tol;
    SOperator op(space, map, opt);

    MonitorSet ms = c.monitors;
    if (ms.fixed_points.empty()) ms.fixed_points = map->known_fixed_points();
    const Point start = resolve_start(c, *space, *map);

    Trajectory traj(space, start, ms.fixed_points);
    ComparePolicy cmp;
    cmp.tie_band = c.cmp_band;

    nlohmann::json online_failure = nullptr;
    nlohmann::json run_error = nullptr;
    try {
        advance(traj, op, c.stop, ms, cmp);
    } catch (const MonitorFailure& f) {
        online_failure = error_json(f);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        run_error = error_json(e);
    }

    nlohmann::json fault = nullptr;
    if (c.fault) {
        const FaultInjection& fi = *c.fault;
        if (fi.row < 1 || fi.row > traj.rows() || fi.i < 1 || fi.i > traj.m(fi.row))
            throw ConfigError("faultInjection position outside the recorded rows");
        const Point z = traj.z(fi.i, fi.row);
        Point q = space->sample(mix_seed(fi.seed, 1));
        double d = space->distance(z, q);
        if (d == 0.0) {
            q = space->anchor();
            d = space->distance(z, q);
        }
        const double lambda = d > 0.0 ? std::min(1.0, fi.offset / d) : 0.0;
        Point moved = space->combine(z, q, lambda);
        fault = {{"row", fi.row}, {"i", fi.i}, {"requestedOffset", fi.offset},
                 {"appliedOffset", space->distance(z, moved)}};
        traj.overwrite_point(fi.i, fi.row, std::move(moved));
    }

    const std::vector<Verdict> verdicts = check_trajectory(traj, ms);
    std::vector<std::string> hard_failures;
    std::vector<std::string> soft_failures;
    for (const auto& v : verdicts) {
        if (v.pass) continue;
        (v.hard ? hard_failures : soft_failures).push_back(v.monitor);
    }
    const bool hard_ok = hard_failures.empty() && online_failure.is_null() && run_error.is_null();

    ExperimentResult res;
    if (!hard_ok) res.exit_code = exit_monitor;
    else if (traj.stop_reason() == StopReason::budget) res.exit_code = exit_budget;
    else res.exit_code = exit_ok;

    const PkExtraction pk = extract_pk(traj);
    std::size_t max_m = 0;
    std::size_t case_one = 0;
    std::size_t case_two = 0;
    for (std::size_t j = 1; j <= traj.rows(); ++j) {
        const RowRecord& r = traj.row(j);
        max_m = std::max(max_m, r.m);
        if (r.tag.kind == CaseKind::one) ++case_one;
        if (r.tag.kind == CaseKind::two) ++case_two;
    }
    const RowRecord& last = traj.row(traj.rows());
    nlohmann::json fixed = nlohmann::json::array();
    for (const auto& p : ms.fixed_points) fixed.push_back(space->to_json(p));
    nlohmann::json ties = nlohmann::json::array();
    for (const auto& t : traj.near_ties()) ties.push_back(t.to_json());
    const nlohmann::json final_residual = last.residual ? nlohmann::json(*last.residual) : nlohmann::json(nullptr);
    const nlohmann::json final_distance =
        last.tail < traj.node_count() && !traj.node(last.tail).to_fixed.empty()
            ? nlohmann::json(traj.node(last.tail).to_fixed.front())
            : nlohmann::json(nullptr);

    res.summary = {
        {"name", c.name},
        {"seed", c.seed},
        {"space", space->describe()},
        {"map", map->describe()},
        {"sMode", to_string(op.mode())},
        {"fixTol", op.fix_tol()},
        {"k1", op.k1()},
        {"stopRule", c.stop.to_json()},
        {"stopReason", to_string(traj.stop_reason())},
        {"rows", traj.rows()},
        {"steps", traj.steps()},
        {"start", space->to_json(start)},
        {"finalY", space->to_json(traj.y(traj.rows()))},
        {"finalResidual", final_residual},
        {"fixedPoints", fixed},
        {"finalDistances", traj.node(last.tail).to_fixed},
        {"pk", {{"p", pk.p}, {"confirmed", pk.confirmed}, {"provisional", pk.provisional()}}},
        {"maxRowLength", max_m},
        {"caseCounts", {{"I", case_one}, {"II", case_two}}},
        {"nearTies", ties},
        {"monitors", {{"pass", hard_ok}, {"hardFailures", hard_failures}, {"softFailures", soft_failures}}},
        {"onlineFailure", online_failure},
        {"runError", run_error},
        {"faultInjection", fault},
        {"exitCode", res.exit_code},
    };
    res.verdicts = {{"name", c.name}, {"verdicts", verdicts_to_json(verdicts)}};
    res.key_metrics = {{"stopReason", to_string(traj.stop_reason())},
                       {"rows", traj.rows()},
                       {"finalResidual", final_residual},
                       {"finalDistance", final_distance},
                       {"hardFailures", hard_failures}};

    const fs::path dir = output_dir_for(c, override_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
    write_text(dir / (c.name + ".trace.csv"), trace_csv(traj));
    write_text(dir / (c.name + ".summary.json"), res.summary.dump(2) + "\n");
    write_text(dir / (c.name + ".verdicts.json"), res.verdicts.dump(2) + "\n");
    return res;
}

int run_file_impl(const std::string& path, std::ostream& out, std::ostream& err,
                  const std::optional<fs::path>& override_dir, nlohmann::json* metrics, std::string* name) {
    try {
        const nlohmann::json doc = read_json(path);
        const ExperimentConfig cfg = ExperimentConfig::from_json(doc, fs::path(path).stem().string());
        if (name != nullptr) *name = cfg.name;
        const ExperimentResult res = run_impl(cfg, override_dir);
        if (metrics != nullptr) *metrics = res.key_metrics;
        out << cfg.name << ": stop=" << res.summary["stopReason"].get<std::string>()
            << " rows=" << res.summary["rows"].get<std::size_t>() << " exit=" << res.exit_code << '\n';
        if (!res.summary["onlineFailure"].is_null()) err << res.summary["onlineFailure"].dump() << '\n';
        if (!res.summary["runError"].is_null()) err << res.summary["runError"].dump() << '\n';
        return res.exit_code;
    } catch (const std::exception& e) {
        nlohmann::json j = error_json(e);
        j["config"] = path;
        err << j.dump() << '\n';
        if (metrics != nullptr) *metrics = {{"error", j}};
        return exit_config;
    }
}

int severity(int code) {
    switch (code) {
    case exit_monitor: return 3;
    case exit_config: return 2;
    case exit_budget: return 1;
    default: return code == exit_ok ? 0 : 2;
    }
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j, const std::string& fallback_name) {
    if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
    static const std::vector<std::string> known{"name",  "description", "space",  "map",  "start",
                                                "sMode", "fixTol",      "stop",   "monitors",
                                                "output", "seed",       "faultInjection"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown config key '" + key + "'");
    }
    ExperimentConfig c;
    c.name = j.contains("name") ? get_as<std::string>(j, "name") : fallback_name;
    if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos)
        throw ConfigError("scenario name must be nonempty and contain no path separators");
    if (!j.contains("space") || !j["space"].is_object()) throw ConfigError("'space' object is required");
    if (!j.contains("map") || !j["map"].is_object()) throw ConfigError("'map' object is required");
    c.space = j["space"];
    c.map = j["map"];
    c.seed = j.contains("seed") ? get_as<std::uint64_t>(j, "seed") : 0;
    c.start = j.contains("start") ? j["start"] : nlohmann::json(nullptr);
    if (j.contains("sMode")) {
        try {
            c.s_mode = parse_s_mode(get_as<std::string>(j, "sMode"));
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }
    }
    c.fix_tol = optional_number(j, "fixTol");

    // Building the space and map here surfaces parameter errors before any output is written.
    SpacePtr space = make_space(c.space);
    MapPtr map = make_map(space, c.map);
    c.stop = parse_stop(j.contains("stop") ? j["stop"] : nlohmann::json(nullptr), space->diameter_bound());

    nlohmann::json mon = j.contains("monitors") ? j["monitors"] : nlohmann::json::object();
    if (!mon.is_object()) throw ConfigError("'monitors' must be an object");
    if (mon.contains("cmpBand")) {
        c.cmp_band = get_as<double>(mon, "cmpBand");
        if (!(c.cmp_band >= 0.0)) throw ConfigError("'monitors.cmpBand' must be >= 0");
        mon.erase("cmpBand");
    }
    if (mon.contains("fixedPoints")) {
        for (const auto& p : mon["fixedPoints"]) c.monitors.fixed_points.push_back(space->from_json(p));
        mon.erase("fixedPoints");
    }
    for (const auto& [key, value] : mon.items()) {
        (void)value;
        static const std::vector<std::string> mkeys{"enabled", "tol", "tolerances", "epsLevels", "cauchyWindow",
                                                    "online"};
        if (std::find(mkeys.begin(), mkeys.end(), key) == mkeys.end())
            throw ConfigError("unknown key 'monitors." + key + "'");
    }
    auto points = std::move(c.monitors.fixed_points);
    c.monitors = MonitorSet::from_json(mon);
    c.monitors.fixed_points = std::move(points);

    c.output_dir = "ucwfp-out";
    if (j.contains("output")) {
        if (!j["output"].is_object()) throw ConfigError("'output' must be an object");
        if (j["output"].contains("dir")) c.output_dir = get_as<std::string>(j["output"], "dir");
    }

    if (j.contains("faultInjection")) {
        const auto& f = j["faultInjection"];
        if (!f.is_object()) throw ConfigError("'faultInjection' must be an object");
        FaultInjection fi;
        fi.row = get_as<std::size_t>(f, "row");
        fi.i = get_as<std::size_t>(f, "i");
        if (f.contains("offset")) fi.offset = get_as<double>(f, "offset");
        if (f.contains("seed")) fi.seed = get_as<std::uint64_t>(f, "seed");
        if (!(fi.offset > 0.0)) throw ConfigError("'faultInjection.offset' must be > 0");
        c.fault = fi;
    }

    // Validates the start entry against the space.
    (void)resolve_start(c, *space, *map);
    return c;
}

ExperimentResult run_experiment(const ExperimentConfig& config) { return run_impl(config, std::nullopt); }

int run_config_file(const std::string& path, std::ostream& out, std::ostream& err) {
    return run_file_impl(path, out, err, std::nullopt, nullptr, nullptr);
}

int run_suite(const fs::path& dir, std::ostream& out, std::ostream& err) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        err << nlohmann::json{{"error", "config"}, {"message", "not a directory: " + dir.string()}}.dump() << '\n';
        return exit_config;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    fs::path out_dir = dir / "out";
    if (const char* env = std::getenv("UCWFP_OUT"); env != nullptr && *env != '\0') out_dir = env;

    nlohmann::json scenarios = nlohmann::json::object();
    int worst = exit_ok;
    for (const auto& file : files) {
        nlohmann::json metrics;
        std::string name = file.stem().string();
        const int code = run_file_impl(file.string(), out, err, out_dir, &metrics, &name);
        scenarios[file.stem().string()] = {{"name", name}, {"exitCode", code}, {"keyMetrics", metrics}};
        if (severity(code) > severity(worst)) worst = code;
    }
    const nlohmann::json report{{"scenarios", scenarios}, {"count", files.size()}, {"exitCode", worst}};
    fs::create_directories(out_dir, ec);
    if (ec) {
        err << nlohmann::json{{"error", "config"}, {"message", "cannot create '" + out_dir.string() + "'"}}.dump()
            << '\n';
        return exit_config;
    }
    write_text(out_dir / "suite.json", report.dump(2) + "\n");
    out << report.dump(2) << '\n';
    return worst;
}

} // namespace ucwfp::cli
