#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucwfp/iteration.hpp"
#include "ucwfp/s_operator.hpp"

namespace ucwfp {

// Slow second implementation of the row construction, used to cross-check
// the engine. Every row is stored as a full copy, every distance is
// recomputed from the points, and S is evaluated afresh on each tail.

struct ReplayRow {
    CaseTag tag;
    std::vector<Point> z;
};

struct ReplayTrajectory {
    std::vector<ReplayRow> rows;

    const Point& y(std::size_t j) const { return rows.at(j - 1).z.back(); }
};

constexpr std::size_t kReplayMaxRows = 1000;

/// Builds `rows` rows (the first is [x]). Throws UsageError when rows is 0
/// or exceeds kReplayMaxRows.
ReplayTrajectory replay_oracle(const SOperator& s, const Point& x, std::size_t rows);

struct Divergence {
    std::size_t row = 0;
    /// "rows", "tag", "m" or "point".
    std::string field;
    /// Position inside the row for point mismatches.
    std::size_t i = 0;
    nlohmann::json engine;
    nlohmann::json oracle;
};

struct ReplayComparison {
    std::size_t rows_compared = 0;
    double point_tol = 0.0;
    double max_point_gap = 0.0;
    std::optional<Divergence> first;

    bool ok() const noexcept { return !first; }
    nlohmann::json to_json() const;
};

/// 0 (bitwise) for flat and tree models, 1e-12 for the hyperboloid.
double default_replay_tol(const Space& space);

/// Compares tags, lengths and every row point over the common rows. With
/// point_tol == 0 points must be bitwise equal.
ReplayComparison compare_with_oracle(const Trajectory& engine, const ReplayTrajectory& oracle,
                                     double point_tol);
ReplayComparison compare_with_oracle(const Trajectory& engine, const ReplayTrajectory& oracle);

} // namespace ucwfp
