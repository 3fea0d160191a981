#include "ucwfp/replay.hpp"

#include <algorithm>

#include "ucwfp/error.hpp"

namespace ucwfp {

ReplayTrajectory replay_oracle(const SOperator& s, const Point& x, std::size_t rows) {
    if (rows == 0 || rows > kReplayMaxRows)
        throw UsageError("replay oracle needs 1 <= rows <= " + std::to_string(kReplayMaxRows));
    const Space& space = s.space();
    ReplayTrajectory out;
    out.rows.push_back({CaseTag::init(), {x}});

    while (out.rows.size() < rows) {
        const std::vector<Point> z = out.rows.back().z;  // z[0] is z_1
        const std::size_t m = z.size();
        const Point w = s.apply(z[m - 1]).point;

        ReplayRow next;
        next.tag = CaseTag::two();
        for (std::size_t i = 2; i + 1 <= m; ++i) {
            const Point& zi = z[i - 1];
            const double ahead = space.distance(zi, z[i]);
            const double behind = space.distance(zi, z[i - 2]);
            if (!(ahead < behind)) continue;
            Point mid = space.midpoint(zi, w);
            if (space.distance(zi, mid) >= behind) {
                next.tag = CaseTag::one(i);
                next.z.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(i));
                next.z.push_back(std::move(mid));
                break;
            }
        }
        if (next.tag.kind == CaseKind::two) {
            next.z = z;
            next.z.push_back(space.midpoint(z[m - 1], w));
        }
        out.rows.push_back(std::move(next));
    }
    return out;
}

double default_replay_tol(const Space& space) { return space.model() == "hyperboloid" ? 1e-12 : 0.0; }

nlohmann::json ReplayComparison::to_json() const {
    nlohmann::json j{{"rowsCompared", rows_compared},
                     {"pointTol", point_tol},
                     {"maxPointGap", max_point_gap},
                     {"ok", ok()}};
    if (first) {
        j["firstDivergence"] = {{"row", first->row},
                                {"field", first->field},
                                {"i", first->i},
                                {"engine", first->engine},
                                {"oracle", first->oracle}};
    } else {
        j["firstDivergence"] = nullptr;
    }
    return j;
}

ReplayComparison compare_with_oracle(const Trajectory& engine, const ReplayTrajectory& oracle, double point_tol) {
    const Space& space = engine.space();
    ReplayComparison cmp;
    cmp.point_tol = point_tol;
    const std::size_t n = std::min(engine.rows(), oracle.rows.size());
    for (std::size_t j = 1; j <= n; ++j) {
        const ReplayRow& o = oracle.rows[j - 1];
        const RowRecord& e = engine.row(j);
        cmp.rows_compared = j;
        if (!(e.tag == o.tag)) {
            cmp.first = Divergence{j, "tag", 0, e.tag.str(), o.tag.str()};
            return cmp;
        }
        if (e.m != o.z.size()) {
            cmp.first = Divergence{j, "m", 0, e.m, o.z.size()};
            return cmp;
        }
        const auto ids = engine.row_nodes(j);
        for (std::size_t i = 1; i <= e.m; ++i) {
            const Point& pe = engine.node(ids[i - 1]).point;
            const Point& po = o.z[i - 1];
            const bool same = pe == po;
            const double gap = same ? 0.0 : space.distance(pe, po);
            cmp.max_point_gap = std::max(cmp.max_point_gap, gap);
            if (point_tol == 0.0 ? !same : !(gap <= point_tol)) {
                cmp.first = Divergence{j, "point", i, space.to_json(pe), space.to_json(po)};
                return cmp;
            }
        }
    }
    if (engine.rows() != oracle.rows.size())
        cmp.first = Divergence{n + 1, "rows", 0, engine.rows(), oracle.rows.size()};
    return cmp;
}

ReplayComparison compare_with_oracle(const Trajectory& engine, const ReplayTrajectory& oracle) {
    return compare_with_oracle(engine, oracle, default_replay_tol(engine.space()));
}

} // namespace ucwfp
