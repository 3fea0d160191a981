#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucwfp/iteration.hpp"
#include "ucwfp/monitor_set.hpp"

namespace ucwfp {

/// Result of one trajectory monitor.
///
/// `worst_margin` is the smallest slack of the monitored inequality over
/// everything it inspected (negative means violated); a monitor passes when
/// worst_margin >= -tol. Hard monitors encode statements that hold for every
/// exact run, so a hard failure means a bug or a broken map contract. Soft
/// monitors are diagnostics.
struct Verdict {
    std::string monitor;
    /// The inequality being checked, in plain notation.
    std::string anchor;
    /// For limit statements: the finite statement actually checked.
    std::string surrogate;
    bool hard = true;
    bool pass = true;
    /// Nothing was inspected (e.g. no known fixed point, premise never met).
    bool vacuous = true;
    std::uint64_t checked = 0;
    double worst_margin = 0.0;
    double tol = 0.0;
    nlohmann::json witness;

    nlohmann::json to_json() const;
};

/// Evaluates every enabled monitor over the whole trajectory. Distances are
/// recomputed from the stored points. The x-sequence monitors use every
/// extracted p_k: inside the recorded horizon each row after p_k keeps row
/// p_k as its prefix, which is all the x-sequence inequalities rely on. Fixed points come from `monitors.fixed_points`, or from the
/// trajectory when that list is empty.
std::vector<Verdict> check_trajectory(const Trajectory& traj, const MonitorSet& monitors);

bool hard_monitors_pass(const std::vector<Verdict>& verdicts);
const Verdict& find_verdict(const std::vector<Verdict>& verdicts, const std::string& monitor);

nlohmann::json verdicts_to_json(const std::vector<Verdict>& verdicts);
/// One line per monitor: name, PASS/FAIL/vacuous, hard/soft, worst margin, anchor.
std::string verdict_table(const std::vector<Verdict>& verdicts);

} // namespace ucwfp
