#pragma once

// Hand-built trajectories that break exactly the inequality a monitor checks.

#include <memory>
#include <string>
#include <vector>

#include "ucwfp/diagnostics.hpp"
#include "ucwfp/iteration.hpp"

namespace fixtures {

struct Corrupted {
    /// The monitor expected to fail.
    std::string monitor;
    std::string description;
    std::shared_ptr<ucwfp::Trajectory> traj;
    ucwfp::MonitorSet monitors;
};

/// One fixture per monitor in the acceptance set: row_fejer, row_drop,
/// tail_envelope, x_drop, x_gap_count, spread_x, x_residual_link, stabilization.
std::vector<Corrupted> acceptance_fixtures();

/// Fixtures for the remaining monitors.
std::vector<Corrupted> extra_fixtures();

/// Runs every monitor on the fixture and returns the verdict of the target.
ucwfp::Verdict evaluate(const Corrupted& f);

} // namespace fixtures
