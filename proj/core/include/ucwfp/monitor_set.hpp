#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucwfp/geometry.hpp"

namespace ucwfp {

/// Names of all trajectory monitors, in report order.
const std::vector<std::string>& monitor_names();

/// Which monitors run, with what tolerances, against which fixed points.
struct MonitorSet {
    /// Empty means every monitor.
    std::vector<std::string> enabled;
    /// Default absolute tolerance for hard monitors.
    double tol = 1e-10;
    /// Per-monitor overrides of `tol`.
    std::map<std::string, double> tolerances;
    /// Points known to be fixed by the map. Monitors that need a fixed point
    /// are vacuous without one.
    std::vector<Point> fixed_points;
    /// eps grid {b 2^-t : t = 1..eps_levels} for drop and count monitors.
    int eps_levels = 12;
    /// Largest window for the Cauchy-window diagnostics.
    std::size_t cauchy_window = 64;
    /// Check row_fejer / row_drop on every new row while the iteration runs.
    bool online = true;

    bool is_enabled(const std::string& name) const;
    double tol_for(const std::string& name) const;
    std::vector<double> eps_grid(double b) const;

    /// Throws ConfigError on unknown monitor names or non-positive tolerances.
    void validate() const;

    /// Reads {enabled?, tol?, tolerances?, epsLevels?, cauchyWindow?, online?}.
    /// Fixed points are not part of the JSON form; callers forward them from the map.
    static MonitorSet from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

} // namespace ucwfp
