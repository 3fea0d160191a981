#include "ucwfp/monitor_set.hpp"

#include <algorithm>
#include <cmath>

#include "ucwfp/error.hpp"

namespace ucwfp {

const std::vector<std::string>& monitor_names() {
    static const std::vector<std::string> names{
        "row_fejer",        "row_drop",         "tail_envelope",   "x_drop",
        "x_gap_count",      "stabilization",    "spread_s_tail",   "spread_x",
        "x_cauchy_window",  "spread_s_x",       "x_residual_decay", "y_limit_envelope",
        "spread_y",         "y_cauchy_window",  "y_residual_decay", "x_residual_link",
    };
    return names;
}

bool MonitorSet::is_enabled(const std::string& name) const {
    return enabled.empty() || std::find(enabled.begin(), enabled.end(), name) != enabled.end();
}

double MonitorSet::tol_for(const std::string& name) const {
    auto it = tolerances.find(name);
    return it == tolerances.end() ? tol : it->second;
}

std::vector<double> MonitorSet::eps_grid(double b) const {
    std::vector<double> grid;
    for (int t = 1; t <= eps_levels; ++t) grid.push_back(std::ldexp(b, -t));
    return grid;
}

void MonitorSet::validate() const {
    const auto& all = monitor_names();
    auto known = [&](const std::string& n) { return std::find(all.begin(), all.end(), n) != all.end(); };
    for (const auto& n : enabled)
        if (!known(n)) throw ConfigError("unknown monitor '" + n + "'");
    if (!(tol > 0.0)) throw ConfigError("monitor tol must be > 0");
    for (const auto& [n, v] : tolerances) {
        if (!known(n)) throw ConfigError("tolerance given for unknown monitor '" + n + "'");
        if (!(v > 0.0)) throw ConfigError("tolerance for monitor '" + n + "' must be > 0");
    }
    if (eps_levels < 1 || eps_levels > 60) throw ConfigError("epsLevels must lie in [1, 60]");
    if (cauchy_window < 2) throw ConfigError("cauchyWindow must be >= 2");
}

MonitorSet MonitorSet::from_json(const nlohmann::json& j) {
    MonitorSet m;
    if (j.is_null()) return m;
    if (!j.is_object()) throw ConfigError("monitors must be a JSON object");
    try {
        if (j.contains("enabled")) m.enabled = j["enabled"].get<std::vector<std::string>>();
        if (j.contains("tol")) m.tol = j["tol"].get<double>();
        if (j.contains("tolerances")) m.tolerances = j["tolerances"].get<std::map<std::string, double>>();
        if (j.contains("epsLevels")) m.eps_levels = j["epsLevels"].get<int>();
        if (j.contains("cauchyWindow")) m.cauchy_window = j["cauchyWindow"].get<std::size_t>();
        if (j.contains("online")) m.online = j["online"].get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("monitors: ") + e.what());
    }
    m.validate();
    return m;
}

nlohmann::json MonitorSet::to_json() const {
    nlohmann::json j{{"tol", tol}, {"epsLevels", eps_levels}, {"cauchyWindow", cauchy_window}, {"online", online}};
    j["enabled"] = enabled.empty() ? monitor_names() : enabled;
    j["tolerances"] = tolerances;
    return j;
}

} // namespace ucwfp
