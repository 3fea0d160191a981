#include "ucwfp/s_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ucwfp/error.hpp"
#include "ucwfp/random.hpp"

namespace ucwfp {

std::string to_string(SMode mode) { return mode == SMode::general ? "general" : "shortcut"; }

SMode parse_s_mode(const std::string& text) {
    if (text == "general") return SMode::general;
    if (text == "shortcut" || text == "nonexpansiveShortcut") return SMode::shortcut;
    throw ConfigError("sMode must be 'general' or 'shortcut', got '" + text + "'");
}

namespace {

const char* branch_name(SBranch b) {
    switch (b) {
    case SBranch::fixed: return "fixed";
    case SBranch::shortcut: return "shortcut";
    case SBranch::general: return "general";
    }
    return "?";
}

} // namespace

nlohmann::json SDecision::to_json() const {
    return {{"branch", branch_name(branch)}, {"n", n}, {"m", m}, {"threshold", threshold}, {"dxTx", dx_tx}};
}

SOperator::SOperator(SpacePtr space, MapPtr map, SOptions options)
    : space_(std::move(space)), map_(std::move(map)), mode_(options.mode) {
    if (!space_ || !map_) throw ConfigError("S operator needs a space and a map");
    fix_tol_ = options.fix_tol.value_or(1e-12 * space_->diameter_bound());
    if (!(fix_tol_ >= 0.0)) throw ConfigError("fix_tol must be >= 0");
    k1_ = map_->k(1);
    if (mode_ == SMode::shortcut && !map_->vanishing_k_up_to(options.shortcut_horizon))
        throw ConfigError("shortcut mode needs k_n == 0 (map '" + map_->name() + "' is not nonexpansive)");
}

double SOperator::threshold_for_displacement(double dx_tx) const {
    if (!(dx_tx > fix_tol_))
        throw PreconditionError("threshold is undefined at a fixed point (d(x,Tx) <= fix_tol)");
    const double b = space_->diameter_bound();
    const double eps = dx_tx / (2.0 * b);
    return std::min(eps, 2.0 * space_->modulus()(b, eps));
}

double SOperator::threshold(const Point& x) const {
    return threshold_for_displacement(space_->distance(x, map_->apply(x)));
}

std::uint64_t SOperator::find_n(double tau) const {
    if (!(tau > 0.0)) throw DomainError("find_n needs tau > 0");
    const std::uint64_t limit = map_->k_witness(tau) + 1;
    double next = map_->k(1);
    for (std::uint64_t n = 1; n <= limit; ++n) {
        const double cur = next;
        next = map_->k(n + 1);
        if (cur <= tau && next <= tau) return n;
    }
    throw MapContractError("map '" + map_->name() + "': no n <= k_witness(" + std::to_string(tau) +
                           ")+1 with k_n, k_{n+1} <= tau");
}

Exponent SOperator::find_m(const Point& x, std::uint64_t n) const {
    const Point tx = map_->apply(x);
    const double dx_tx = space_->distance(tx, x);
    if (!(dx_tx > fix_tol_)) throw PreconditionError("find_m is undefined at a fixed point");
    return find_m(x, tx, dx_tx, n);
}

Exponent SOperator::find_m(const Point& x, const Point& tx, double dx_tx, std::uint64_t n) const {
    if (n < 1) throw DomainError("find_m needs n >= 1");
    const double bound = dx_tx / (2.0 + k1_);
    Point tn = n == 1 ? tx : map_->power(n - 1, tx);
    const double dn = space_->distance(tn, x);
    if (dn >= bound) return {n, std::move(tn)};
    Point tn1 = map_->apply(tn);
    const double dn1 = space_->distance(tn1, x);
    if (dn1 >= bound) return {n + 1, std::move(tn1)};

    // The inequality holds for one of the two exponents in exact arithmetic;
    // accept a rounding-level shortfall before declaring a contradiction.
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::max(dx_tx, space_->tolerance());
    if (dn >= bound - slack) return {n, std::move(tn)};
    if (dn1 >= bound - slack) return {n + 1, std::move(tn1)};
    throw NumericalContradiction("neither T^" + std::to_string(n) + "x nor T^" + std::to_string(n + 1) +
                                 "x is at distance >= d(Tx,x)/(2+k_1) = " + std::to_string(bound) +
                                 " from x (got " + std::to_string(dn) + ", " + std::to_string(dn1) +
                                 "); the map violates its k_1 bound");
}

SResult SOperator::apply(const Point& x) const {
    Point tx = map_->apply(x);
    const double dx_tx = space_->distance(tx, x);
    SDecision decision;
    decision.dx_tx = dx_tx;
    if (!(dx_tx > fix_tol_)) {
        decision.branch = SBranch::fixed;
        return {x, decision};
    }
    if (mode_ == SMode::shortcut) {
        decision.branch = SBranch::shortcut;
        decision.n = 1;
        decision.m = 1;
        return {std::move(tx), decision};
    }
    decision.branch = SBranch::general;
    decision.threshold = threshold_for_displacement(dx_tx);
    decision.n = find_n(decision.threshold);
    Exponent e = find_m(x, tx, dx_tx, decision.n);
    decision.m = e.m;
    return {space_->midpoint(e.image, x), decision};
}

// ---------------------------------------------------------------------------

nlohmann::json PropertyCheck::to_json() const {
    return {{"property", name},
            {"statement", statement},
            {"checked", checked},
            {"worstMargin", checked ? nlohmann::json(worst_margin) : nlohmann::json(nullptr)},
            {"tol", tol},
            {"pass", pass()},
            {"witness", witness}};
}

bool SPropertyReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.pass(); });
}

const PropertyCheck& SPropertyReport::at(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw UsageError("no property named '" + name + "'");
}

nlohmann::json SPropertyReport::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) list.push_back(c.to_json());
    return {{"trials", trials}, {"seed", seed}, {"pass", pass()}, {"properties", list}};
}

namespace {

struct Tracker {
    PropertyCheck check;

    Tracker(std::string name, std::string statement, double tol) {
        check.name = std::move(name);
        check.statement = std::move(statement);
        check.tol = tol;
        check.worst_margin = std::numeric_limits<double>::infinity();
    }
    void observe(double margin, const nlohmann::json& where) {
        ++check.checked;
        if (margin < check.worst_margin) {
            check.worst_margin = margin;
            check.witness = where;
        }
    }
};

} // namespace

SPropertyReport check_s_properties(const SOperator& op, std::uint64_t trials, std::uint64_t seed,
                                   std::uint64_t horizon, double tol) {
    const Space& space = op.space();
    const AsymptoticMap& map = op.map();
    const double band = op.fix_tol() / (2.0 * (2.0 + op.k1()));

    Tracker displacement("displacement", "d(Sx,x) >= d(Tx,x)/(2(2+k_1))", tol);
    Tracker fixed_band("fixed_band", "d(x,Tx) <= fixTol  <=>  d(x,Sx) <= fixTol/(2(2+k_1))", 0.0);
    Tracker quasi("quasi_nonexpansive", "d(Sx,p) <= d(x,p) for known fixed points p", tol);
    Tracker midpoint("midpoint_identity", "d(x,Sx) = d(x,T^m x)/2", 1e-12 * std::max(1.0, space.diameter_bound()));
    Tracker exact("fixed_point_exact", "Sp == p for known fixed points p", 0.0);

    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t s = mix_seed(seed, t);
        Point x = space.sample(s);
        for (std::uint64_t h = 0; h <= horizon; ++h) {
            const nlohmann::json where{{"trial", t}, {"seed", s}, {"step", h}};
            const Point tx = map.apply(x);
            const double dx_tx = space.distance(tx, x);
            const SResult r = op.apply(x);
            const double dx_sx = space.distance(r.point, x);

            if (dx_tx > op.fix_tol())
                displacement.observe(dx_sx - dx_tx / (2.0 * (2.0 + op.k1())), where);

            const bool t_fixed = !(dx_tx > op.fix_tol());
            const bool s_fixed = dx_sx <= band;
            fixed_band.observe(t_fixed == s_fixed ? 0.0 : -1.0, where);

            for (std::size_t i = 0; i < map.known_fixed_points().size(); ++i) {
                const Point& p = map.known_fixed_points()[i];
                nlohmann::json w = where;
                w["fixedPoint"] = i;
                quasi.observe(space.distance(x, p) - space.distance(r.point, p), w);
            }

            if (r.decision.branch == SBranch::general) {
                const Point tm = map.power(r.decision.m, x);
                midpoint.observe(-std::abs(dx_sx - 0.5 * space.distance(x, tm)), where);
            }
            x = r.point;
        }
    }

    for (std::size_t i = 0; i < map.known_fixed_points().size(); ++i) {
        const Point& p = map.known_fixed_points()[i];
        exact.observe(op.apply(p).point == p ? 0.0 : -1.0, {{"fixedPoint", i}});
    }

    SPropertyReport report;
    report.trials = trials;
    report.seed = seed;
    for (auto* tr : {&displacement, &fixed_band, &quasi, &midpoint, &exact}) report.checks.push_back(tr->check);
    return report;
}

} // namespace ucwfp
