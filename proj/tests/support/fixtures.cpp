#include "fixtures.hpp"

#include <cmath>

#include "ucwfp/mappings.hpp"
#include "ucwfp/s_operator.hpp"
#include "ucwfp/spaces.hpp"

using namespace ucwfp;

namespace fixtures {

namespace {

std::shared_ptr<EuclideanBall> disk() { return std::make_shared<EuclideanBall>(2, 1.0); }

Point pt(double a, double b) { return VectorPoint{{a, b}}; }

/// Case II rows whose tails are `pts` in order, so x_k = pts[k-1].
std::shared_ptr<Trajectory> chain(const std::vector<Point>& pts, std::vector<Point> fixed = {}) {
    auto t = std::make_shared<Trajectory>(disk(), pts.front(), std::move(fixed));
    for (std::size_t k = 1; k < pts.size(); ++k) t->append_row(CaseTag::two(), pts[k]);
    return t;
}

/// A genuine contraction run towards the origin.
std::shared_ptr<Trajectory> contraction_run() {
    auto space = disk();
    auto map = make_contraction(space, 0.5);
    SOperator op(space, map);
    MonitorSet ms;
    ms.fixed_points = map->known_fixed_points();
    return std::make_shared<Trajectory>(run(op, pt(0.8, 0.3), StopRule::defaults(space->diameter_bound()), ms));
}

Corrupted make(std::string monitor, std::string description, std::shared_ptr<Trajectory> t) {
    Corrupted c{std::move(monitor), std::move(description), std::move(t), MonitorSet{}};
    c.monitors.fixed_points = c.traj->fixed_points();
    return c;
}

/// x = (1,0), (0.8,0), (0.79,0), (0.78,0): the descent premise holds at n = 2
/// with d(x_2, x_1) = 0.2; S y_3 is then replaced by a point far behind.
std::shared_ptr<Trajectory> premise_with_fake_s() {
    auto t = chain({pt(1, 0), pt(0.8, 0), pt(0.79, 0), pt(0.78, 0)});
    t->set_s_tail(3, pt(-0.5, 0));
    return t;
}

std::shared_ptr<Trajectory> widening() { return chain({pt(0, 0), pt(0, 0), pt(0.5, 0), pt(-0.5, 0)}); }

} // namespace

std::vector<Corrupted> acceptance_fixtures() {
    std::vector<Corrupted> out;
    const Point origin = pt(0, 0);

    {
        auto t = contraction_run();
        const std::size_t J = t->rows();
        const auto& y = t->y(J).as<VectorPoint>().coords;
        const double r = std::hypot(y[0], y[1]);
        const Point moved = r > 0.0 ? pt(y[0] + 0.1 * y[0] / r, y[1] + 0.1 * y[1] / r) : pt(0.1, 0);
        t->overwrite_point(t->m(J), J, moved);
        out.push_back(make("row_fejer", "contraction run, last y pushed 0.1 away from the fixed point", t));
    }
    out.push_back(make("row_drop", "row (0.5,0), (0,0.5): a long edge along a circle about p",
                       chain({pt(0.5, 0), pt(0, 0.5)}, {origin})));
    {
        auto t = contraction_run();
        const std::size_t J = t->rows();
        t->overwrite_point(t->m(J), J, pt(-0.9, 0));
        out.push_back(make("tail_envelope", "contraction run, last y moved to (-0.9,0)", t));
    }
    {
        std::vector<Point> circle;
        for (int a = 0; a < 4; ++a) circle.push_back(pt(0.5 * std::cos(a), 0.5 * std::sin(a)));
        out.push_back(make("x_drop", "x_k on the circle of radius 0.5 about p", chain(circle, {origin})));
    }
    {
        std::vector<Point> alt;
        for (int k = 0; k < 60; ++k) alt.push_back(pt(k % 2 == 0 ? 1.0 : -1.0, 0));
        out.push_back(make("x_gap_count", "60 x_k alternating between (1,0) and (-1,0)", chain(alt)));
    }
    out.push_back(make("spread_x", "x = (1,0), (0.5,0), (0.45,0), (-0.6,0)",
                       chain({pt(1, 0), pt(0.5, 0), pt(0.45, 0), pt(-0.6, 0)})));
    {
        auto t = chain({pt(0.5, 0), pt(0.25, 0), pt(0.125, 0)});
        t->set_s_tail(1, pt(-0.5, 0));
        out.push_back(make("x_residual_link", "S x_1 recorded as (-0.5,0) while x_2 = (0.25,0)", t));
    }
    {
        const Point a = pt(0.3, 0.1);
        out.push_back(make("stabilization", "x_1 = x_2 = x_3 = (0.3,0.1), then y_4 = (-0.2,0.4)",
                           chain({a, a, a, pt(-0.2, 0.4)})));
    }
    return out;
}

std::vector<Corrupted> extra_fixtures() {
    std::vector<Corrupted> out;
    out.push_back(make("spread_s_tail", "descent at n = 2, S y_3 recorded far behind x_2", premise_with_fake_s()));
    out.push_back(make("spread_s_x", "descent at n = 2, S x_3 recorded far behind x_2", premise_with_fake_s()));
    out.push_back(make("x_residual_decay", "descent at n = 2, d(x_3, S x_3) > 4 d(x_2, x_1)", premise_with_fake_s()));
    {
        auto t = chain({pt(0.5, 0), pt(0.25, 0)});
        StopRule rule;
        rule.residual_tol = 1e-9;
        t->set_stop_rule(rule);
        t->set_stop_reason(StopReason::residual);
        t->set_s_tail(2, pt(0, 0));
        out.push_back(make("y_residual_decay", "residual stop recorded with d(y_J, S y_J) = 0.25", t));
    }
    out.push_back(make("y_limit_envelope", "x_2 within 1e-4 of p, later y_3 = (0.3,0)",
                       chain({pt(0.5, 0), pt(1e-4, 0), pt(0.3, 0)}, {pt(0, 0)})));
    out.push_back(make("spread_y", "descent at n = 2, then y_4 = (-0.6,0) beyond 2 d(x_2, x_1)",
                       chain({pt(1, 0), pt(0.5, 0), pt(0.45, 0), pt(-0.6, 0)})));
    out.push_back(make("x_cauchy_window", "x = 0, 0, (0.5,0), (-0.5,0)", widening()));
    out.push_back(make("y_cauchy_window", "y = 0, 0, (0.5,0), (-0.5,0)", widening()));
    return out;
}

Verdict evaluate(const Corrupted& f) {
    const auto verdicts = check_trajectory(*f.traj, f.monitors);
    return find_verdict(verdicts, f.monitor);
}

} // namespace fixtures
