#include "ucwfp/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ucwfp/error.hpp"

namespace ucwfp {

std::string CaseTag::str() const {
    switch (kind) {
    case CaseKind::init: return "init";
    case CaseKind::one: return "I:" + std::to_string(i);
    case CaseKind::two: return "II";
    }
    return "?";
}

nlohmann::json NearTie::to_json() const {
    return {{"row", row}, {"i", i}, {"condition", condition}, {"lhs", lhs}, {"rhs", rhs}};
}

std::string to_string(StopReason reason) {
    switch (reason) {
    case StopReason::none: return "none";
    case StopReason::residual: return "residual";
    case StopReason::gap: return "gap";
    case StopReason::budget: return "budget";
    }
    return "?";
}

StopRule StopRule::defaults(double b) {
    StopRule r;
    r.max_rows = 100000;
    r.residual_tol = 1e-8 * b;
    return r;
}

void StopRule::validate() const {
    if (!max_rows && !residual_tol && !gap_tol)
        throw ConfigError("stop rule needs at least one of maxRows, residualTol, gapTol");
    if (residual_tol && !(*residual_tol >= 0.0)) throw ConfigError("residualTol must be >= 0");
    if (gap_tol && !(*gap_tol >= 0.0)) throw ConfigError("gapTol must be >= 0");
    if (gap_window < 1) throw ConfigError("gapWindow must be >= 1");
}

nlohmann::json StopRule::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    j["maxRows"] = max_rows ? nlohmann::json(*max_rows) : nlohmann::json(nullptr);
    j["residualTol"] = residual_tol ? nlohmann::json(*residual_tol) : nlohmann::json(nullptr);
    j["gapTol"] = gap_tol ? nlohmann::json(*gap_tol) : nlohmann::json(nullptr);
    j["gapWindow"] = gap_window;
    return j;
}

// ---------------------------------------------------------------------------
// Trajectory
// ---------------------------------------------------------------------------

Trajectory::Trajectory(SpacePtr space, Point start, std::vector<Point> fixed_points)
    : space_(std::move(space)), fixed_points_(std::move(fixed_points)) {
    if (!space_) throw UsageError("trajectory needs a space");
    if (!space_->owns(start)) throw UsageError("start point does not belong to the space");
    if (space_->excess(start) > space_->tolerance()) throw DomainError("start point lies outside the space");
    for (const auto& p : fixed_points_)
        if (!space_->owns(p)) throw UsageError("fixed point does not belong to the space");
    auto dist = fixed_distances(start);
    nodes_.push_back(Node{std::move(start), Node::npos, 0.0, 1, std::move(dist)});
    rows_.push_back(RowRecord{1, 0, CaseTag::init(), 0.0, std::nullopt, std::nullopt, std::nullopt});
    current_.push_back(0);
}

std::vector<double> Trajectory::fixed_distances(const Point& p) const {
    std::vector<double> d;
    d.reserve(fixed_points_.size());
    for (const auto& f : fixed_points_) d.push_back(space_->distance(p, f));
    return d;
}

const RowRecord& Trajectory::row(std::size_t j) const {
    if (j < 1 || j > rows_.size())
        throw UsageError("row index " + std::to_string(j) + " outside [1, " + std::to_string(rows_.size()) + "]");
    return rows_[j - 1];
}

std::size_t Trajectory::node_at(std::size_t i, std::size_t j) const {
    const RowRecord& r = row(j);
    if (i < 1 || i > r.m)
        throw UsageError("position " + std::to_string(i) + " outside row " + std::to_string(j) + " of length " +
                         std::to_string(r.m));
    std::size_t id = r.tail;
    for (std::size_t k = r.m; k > i; --k) id = nodes_[id].parent;
    return id;
}

std::vector<std::size_t> Trajectory::row_nodes(std::size_t j) const {
    const RowRecord& r = row(j);
    std::vector<std::size_t> ids(r.m);
    std::size_t id = r.tail;
    for (std::size_t k = r.m; k-- > 0;) {
        ids[k] = id;
        id = nodes_[id].parent;
    }
    return ids;
}

std::vector<Point> Trajectory::row_points(std::size_t j) const {
    std::vector<Point> pts;
    for (auto id : row_nodes(j)) pts.push_back(nodes_[id].point);
    return pts;
}

std::size_t Trajectory::append_row(CaseTag tag, Point point, std::optional<double> edge) {
    if (!space_->owns(point)) throw UsageError("row point does not belong to the space");
    const std::size_t m = current_.size();
    std::size_t keep = 0;
    switch (tag.kind) {
    case CaseKind::init: throw UsageError("only the first row is tagged init");
    case CaseKind::one:
        if (tag.i < 2 || tag.i + 1 > m)
            throw UsageError("Case I position " + std::to_string(tag.i) + " outside [2, " + std::to_string(m - 1) +
                             "]");
        keep = tag.i;
        break;
    case CaseKind::two: keep = m; break;
    }
    const std::size_t parent = current_[keep - 1];
    const std::size_t old_tail = current_.back();
    const double e = edge ? *edge : space_->distance(nodes_[parent].point, point);
    const double stride = tag.kind == CaseKind::two ? e : space_->distance(nodes_[old_tail].point, point);

    auto dist = fixed_distances(point);
    nodes_.push_back(Node{std::move(point), parent, e, keep + 1, std::move(dist)});
    const std::size_t id = nodes_.size() - 1;

    current_.resize(keep);
    current_.push_back(id);
    while (!descents_.empty() && descents_.back() >= keep) descents_.pop_back();
    if (keep >= 2 && e < nodes_[parent].edge) descents_.push_back(keep);

    rows_.push_back(RowRecord{keep + 1, id, tag, stride, std::nullopt, std::nullopt, std::nullopt});
    return rows_.size();
}

void Trajectory::set_s_tail(std::size_t j, Point s_tail, std::optional<SDecision> decision) {
    if (!space_->owns(s_tail)) throw UsageError("S y_j does not belong to the space");
    row(j);
    RowRecord& r = rows_[j - 1];
    r.residual = space_->distance(nodes_[r.tail].point, s_tail);
    r.s_tail = std::move(s_tail);
    r.decision = decision;
}

void Trajectory::log_near_tie(NearTie tie, std::size_t cap) {
    if (near_ties_.size() < cap) near_ties_.push_back(std::move(tie));
}

void Trajectory::overwrite_point(std::size_t i, std::size_t j, Point p) {
    if (!space_->owns(p)) throw UsageError("replacement point does not belong to the space");
    const std::size_t id = node_at(i, j);
    nodes_[id].point = std::move(p);
    nodes_[id].to_fixed = fixed_distances(nodes_[id].point);
    for (auto& n : nodes_)
        if (n.parent != Node::npos) n.edge = space_->distance(nodes_[n.parent].point, n.point);
    for (std::size_t r = 1; r < rows_.size(); ++r)
        rows_[r].step = space_->distance(nodes_[rows_[r - 1].tail].point, nodes_[rows_[r].tail].point);
    descents_.clear();
    for (std::size_t pos = 2; pos + 1 <= current_.size(); ++pos)
        if (nodes_[current_[pos]].edge < nodes_[current_[pos - 1]].edge) descents_.push_back(pos);
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

void close_last_row(Trajectory& traj, const SOperator& s) {
    const std::size_t j = traj.rows();
    if (traj.row(j).s_tail) return;
    SResult r = s.apply(traj.y(j));
    traj.set_s_tail(j, std::move(r.point), r.decision);
}

namespace {

void check_new_node(const Trajectory& traj, const MonitorSet& monitors, std::size_t row) {
    if (traj.fixed_points().empty()) return;
    const Space& space = traj.space();
    const std::size_t id = traj.row(row).tail;
    const Node& child = traj.node(id);
    const Node& parent = traj.node(child.parent);
    const double b = space.diameter_bound();
    const UTransform u = u_transform(space.modulus());

    for (std::size_t k = 0; k < traj.fixed_points().size(); ++k) {
        const double drop = parent.to_fixed[k] - child.to_fixed[k];
        nlohmann::json where{{"row", row},
                             {"i", parent.depth},
                             {"fixedPoint", k},
                             {"dParent", parent.to_fixed[k]},
                             {"dChild", child.to_fixed[k]},
                             {"edge", child.edge}};
        if (monitors.is_enabled("row_fejer") && drop < -monitors.tol_for("row_fejer")) {
            where["monitor"] = "row_fejer";
            where["margin"] = drop;
            throw MonitorFailure("row_fejer: d(z[i+1],p) > d(z[i],p) in row " + std::to_string(row), where);
        }
        if (monitors.is_enabled("row_drop")) {
            for (double eps : monitors.eps_grid(b)) {
                if (child.edge < eps) continue;
                const double margin = drop - u(b, eps / b) * b;
                if (margin < -monitors.tol_for("row_drop")) {
                    where["monitor"] = "row_drop";
                    where["eps"] = eps;
                    where["margin"] = margin;
                    throw MonitorFailure("row_drop: distance to p fell by less than u(b,eps/b)b in row " +
                                             std::to_string(row),
                                         where);
                }
            }
        }
    }
}

} // namespace

const RowRecord& step(Trajectory& traj, const SOperator& s, const ComparePolicy& cmp, const MonitorSet* monitors) {
    close_last_row(traj, s);
    const std::size_t j = traj.rows();
    const Space& space = traj.space();
    const Point w = *traj.row(j).s_tail;
    const std::vector<std::size_t>& cur = traj.current_row();
    const std::size_t m = cur.size();

    auto edge_at = [&](std::size_t pos) { return traj.node(cur[pos - 1]).edge; };
    auto point_at = [&](std::size_t pos) -> const Point& { return traj.node(cur[pos - 1]).point; };

    std::optional<std::size_t> chosen;
    Point mid;
    double reach = 0.0;

    auto try_position = [&](std::size_t i) {
        Point cand = space.midpoint(point_at(i), w);
        const double h = space.distance(point_at(i), cand);
        if (cmp.tie_band > 0.0 && std::abs(h - edge_at(i)) <= cmp.tie_band)
            traj.log_near_tie({j, i, "reach", h, edge_at(i)}, cmp.max_logged);
        if (h >= edge_at(i)) {
            chosen = i;
            mid = std::move(cand);
            reach = h;
        }
    };

    if (cmp.tie_band > 0.0) {
        for (std::size_t i = 2; i + 1 <= m && !chosen; ++i) {
            const double lhs = edge_at(i + 1);
            const double rhs = edge_at(i);
            if (std::abs(lhs - rhs) <= cmp.tie_band) traj.log_near_tie({j, i, "descent", lhs, rhs}, cmp.max_logged);
            if (lhs < rhs) try_position(i);
        }
    } else {
        const std::vector<std::size_t>& desc = traj.descents();
        for (std::size_t i : desc) {
            try_position(i);
            if (chosen) break;
        }
    }

    if (chosen) {
        traj.append_row(CaseTag::one(*chosen), std::move(mid), reach);
    } else {
        const Point& yj = point_at(m);
        Point next = space.midpoint(yj, w);
        const double h = space.distance(yj, next);
        traj.append_row(CaseTag::two(), std::move(next), h);
    }
    if (monitors != nullptr && monitors->online) check_new_node(traj, *monitors, traj.rows());
    return traj.row(traj.rows());
}

void advance(Trajectory& traj, const SOperator& s, const StopRule& stop, const MonitorSet& monitors,
             const ComparePolicy& cmp) {
    stop.validate();
    traj.set_stop_rule(stop);
    traj.set_stop_reason(StopReason::none);
    for (;;) {
        close_last_row(traj, s);
        const RowRecord& last = traj.row(traj.rows());
        if (stop.residual_tol && *last.residual <= *stop.residual_tol) {
            traj.set_stop_reason(StopReason::residual);
            return;
        }
        if (stop.gap_tol && last.m > stop.gap_window) {
            const auto& cur = traj.current_row();
            bool small = true;
            for (std::size_t k = cur.size() - stop.gap_window; k < cur.size() && small; ++k)
                small = traj.node(cur[k]).edge <= *stop.gap_tol;
            if (small) {
                traj.set_stop_reason(StopReason::gap);
                return;
            }
        }
        if (stop.max_rows && traj.steps() >= *stop.max_rows) {
            traj.set_stop_reason(StopReason::budget);
            return;
        }
        step(traj, s, cmp, &monitors);
    }
}

Trajectory run(const SOperator& s, const Point& x, const StopRule& stop, const MonitorSet& monitors,
               const ComparePolicy& cmp) {
    Trajectory traj(s.space_ptr(), x, monitors.fixed_points);
    advance(traj, s, stop, monitors, cmp);
    return traj;
}

// ---------------------------------------------------------------------------
// p_k extraction
// ---------------------------------------------------------------------------

PkExtraction extract_pk(const Trajectory& traj) {
    PkExtraction out;
    const std::size_t rows = traj.rows();
    // at_length[v] lists the rows with m_j = v, ascending.
    std::vector<std::vector<std::size_t>> at_length(2);
    for (std::size_t j = 1; j <= rows; ++j) {
        const std::size_t m = traj.m(j);
        if (m >= at_length.size()) at_length.resize(m + 1);
        at_length[m].push_back(j);
    }

    out.p.push_back(1);
    out.confirmed = 1;
    bool confirmed = true;
    for (std::size_t k = 1; k + 1 < at_length.size(); ++k) {
        const std::size_t pk = out.p.back();
        const auto& hits = at_length[k + 1];
        const auto first = std::upper_bound(hits.begin(), hits.end(), pk);
        if (first == hits.end()) break;
        const auto count = static_cast<std::size_t>(hits.end() - first);
        out.p.push_back(hits.back());

        if (confirmed) {
            bool ok = k == 1 || count >= 2;
            if (!ok && *first == pk + 1) {
                const auto ids = traj.row_nodes(pk + 1);
                ok = !(traj.node(ids[k]).edge < traj.node(ids[k - 1]).edge);
            }
            confirmed = ok;
            if (ok) out.confirmed = out.p.size();
        }
    }
    return out;
}

} // namespace ucwfp
