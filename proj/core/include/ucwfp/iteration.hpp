#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucwfp/geometry.hpp"
#include "ucwfp/monitor_set.hpp"
#include "ucwfp/s_operator.hpp"

namespace ucwfp {

// ---------------------------------------------------------------------------
// Rows
//
// Row j is a finite sequence z_1j .. z_{m_j j}; its last entry is y_j. Each
// new row keeps a prefix of the previous one and appends a single point, so
// all rows are stored as root-to-node paths of one tree: node z_ij has parent
// z_(i-1)j and caches the edge length d(z_ij, z_(i-1)j). Public indices (row
// j, position i) are 1-based.
// ---------------------------------------------------------------------------

enum class CaseKind { init, one, two };

struct CaseTag {
    CaseKind kind = CaseKind::init;
    /// Position kept by a Case I step (the new row is z_1 .. z_i, new point).
    std::size_t i = 0;

    static CaseTag init() { return {CaseKind::init, 0}; }
    static CaseTag one(std::size_t i) { return {CaseKind::one, i}; }
    static CaseTag two() { return {CaseKind::two, 0}; }

    /// "init", "I:<i>" or "II".
    std::string str() const;
    bool operator==(const CaseTag&) const = default;
};

struct Node {
    Point point;
    /// Index of z_(i-1) in the node table; npos for z_1.
    std::size_t parent;
    /// d(z_i, z_(i-1)); 0 for z_1.
    double edge;
    /// Position i of this node in every row that contains it.
    std::size_t depth;
    /// Distances to the trajectory's fixed points, in order.
    std::vector<double> to_fixed;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct RowRecord {
    std::size_t m = 1;
    /// Node holding y_j.
    std::size_t tail = 0;
    CaseTag tag;
    /// d(y_j, y_(j-1)); 0 for the first row.
    double step = 0.0;
    /// S y_j, filled in when the next row is built or when the run stops.
    std::optional<Point> s_tail;
    std::optional<SDecision> decision;
    /// d(y_j, S y_j) when s_tail is known.
    std::optional<double> residual;
};

/// A comparison that landed within `band` of the opposite branch.
struct NearTie {
    std::size_t row;
    std::size_t i;
    /// "descent" (d(z_i,z_i+1) < d(z_i,z_i-1)) or "reach" (d(z_i, mid) >= d(z_i,z_i-1)).
    std::string condition;
    double lhs;
    double rhs;

    nlohmann::json to_json() const;
};

/// Case I comparisons are raw IEEE comparisons. A positive band only makes
/// the engine log comparisons whose two sides differ by at most the band; the
/// branch taken never depends on it.
struct ComparePolicy {
    double tie_band = 0.0;
    std::size_t max_logged = 1000;
};

enum class StopReason { none, residual, gap, budget };
std::string to_string(StopReason reason);

/// At least one rule must be set.
struct StopRule {
    /// Number of steps (rows built after the first).
    std::optional<std::uint64_t> max_rows;
    /// Stop when d(y_J, S y_J) <= residual_tol.
    std::optional<double> residual_tol;
    /// Stop when the last `gap_window` edges of the current row are all <= gap_tol.
    std::optional<double> gap_tol;
    std::size_t gap_window = 3;

    /// maxRows 1e5, residualTol 1e-8 b, no gap rule.
    static StopRule defaults(double b);
    void validate() const;
    nlohmann::json to_json() const;
};

class Trajectory {
public:
    Trajectory(SpacePtr space, Point start, std::vector<Point> fixed_points = {});

    const Space& space() const noexcept { return *space_; }
    const SpacePtr& space_ptr() const noexcept { return space_; }
    const std::vector<Point>& fixed_points() const noexcept { return fixed_points_; }

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t steps() const noexcept { return rows_.size() - 1; }
    const RowRecord& row(std::size_t j) const;
    std::size_t m(std::size_t j) const { return row(j).m; }
    const Point& y(std::size_t j) const { return nodes_[row(j).tail].point; }
    /// z_ij; walks up from the row's tail.
    const Point& z(std::size_t i, std::size_t j) const { return nodes_[node_at(i, j)].point; }
    std::size_t node_at(std::size_t i, std::size_t j) const;
    std::vector<std::size_t> row_nodes(std::size_t j) const;
    std::vector<Point> row_points(std::size_t j) const;

    const Node& node(std::size_t id) const { return nodes_.at(id); }
    std::size_t node_count() const noexcept { return nodes_.size(); }

    /// Node ids of the last row, z_1 first.
    const std::vector<std::size_t>& current_row() const noexcept { return current_; }
    /// Positions i in [2, m_J - 1] of the last row with d(z_i, z_i+1) < d(z_i, z_i-1), ascending.
    const std::vector<std::size_t>& descents() const noexcept { return descents_; }

    StopReason stop_reason() const noexcept { return stop_reason_; }
    /// The rule the last call to advance() ran under.
    const std::optional<StopRule>& stop_rule() const noexcept { return stop_rule_; }
    const std::vector<NearTie>& near_ties() const noexcept { return near_ties_; }

    // -- building --------------------------------------------------------

    /// Appends a row according to `tag`: Case I keeps z_1 .. z_i of the last row
    /// and appends `point`; Case II keeps the whole last row. `edge`, when
    /// given, must be the value of d(z_i, point) the caller already computed.
    /// Returns the new row index. Throws UsageError on an impossible tag.
    std::size_t append_row(CaseTag tag, Point point, std::optional<double> edge = std::nullopt);

    /// Records S y_j for row j (and the resulting residual).
    void set_s_tail(std::size_t j, Point s_tail, std::optional<SDecision> decision = std::nullopt);

    void set_stop_reason(StopReason r) noexcept { stop_reason_ = r; }
    void set_stop_rule(StopRule r) { stop_rule_ = std::move(r); }
    void log_near_tie(NearTie tie, std::size_t cap);

    /// Replaces the point stored at z_ij (shared by every row containing that
    /// node) and refreshes cached edges and fixed-point distances. Meant for
    /// building corrupted fixtures.
    void overwrite_point(std::size_t i, std::size_t j, Point p);

private:
    std::vector<double> fixed_distances(const Point& p) const;

    SpacePtr space_;
    std::vector<Point> fixed_points_;
    std::vector<Node> nodes_;
    std::vector<RowRecord> rows_;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> descents_;
    std::vector<NearTie> near_ties_;
    StopReason stop_reason_ = StopReason::none;
    std::optional<StopRule> stop_rule_;
};

/// Builds row J+1 from row J: w = S y_J is evaluated once (or taken from the
/// row if already recorded); the first i in [2, m_J - 1] with
///   d(z_i, z_i+1) < d(z_i, z_i-1)  and  d(z_i, (z_i + w)/2) >= d(z_i, z_i-1)
/// gives Case I, otherwise Case II appends (y_J + w)/2.
/// When `monitors` is given and online, the new point is checked against the
/// row Fejer and row drop inequalities; a violation throws MonitorFailure.
const RowRecord& step(Trajectory& traj, const SOperator& s, const ComparePolicy& cmp = {},
                      const MonitorSet* monitors = nullptr);

/// Ensures S y_J and the residual are recorded for the last row.
void close_last_row(Trajectory& traj, const SOperator& s);

/// Steps until a stop rule fires, checking rules in the order residual, gap,
/// budget before every step. Leaves the partial trajectory in `traj` when a
/// monitor failure is thrown.
void advance(Trajectory& traj, const SOperator& s, const StopRule& stop, const MonitorSet& monitors,
             const ComparePolicy& cmp = {});

/// init + advance.
Trajectory run(const SOperator& s, const Point& x, const StopRule& stop, const MonitorSet& monitors,
               const ComparePolicy& cmp = {});

/// Subsequence p_1 < p_2 < ... with m_{p_k} = k, read as the last row index
/// with m_j = k after p_(k-1). x_k = y_{p_k}.
///
/// The first `confirmed` entries cannot change when the run is continued:
/// p_(k+1) is confirmed once p_k is and either k = 1, or the row length
/// returned to k+1 a second time, or row p_k + 1 has no descent at position k
/// (so no later Case I step can replace z_(k+1)). The remaining entries are
/// provisional.
struct PkExtraction {
    /// p[k-1] = p_k.
    std::vector<std::size_t> p;
    std::size_t confirmed = 0;

    std::size_t provisional() const noexcept { return p.size() - confirmed; }
};

PkExtraction extract_pk(const Trajectory& traj);

} // namespace ucwfp
