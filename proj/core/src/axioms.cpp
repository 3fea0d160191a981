#include "ucwfp/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ucwfp/error.hpp"
#include "ucwfp/random.hpp"
#include "ucwfp/spaces.hpp"

namespace ucwfp {

nlohmann::json AxiomCheck::to_json() const {
    return {{"axiom", axiom},
            {"statement", statement},
            {"trials", trials},
            {"maxViolation", trials ? nlohmann::json(max_violation) : nlohmann::json(nullptr)},
            {"worstSeedInputs", worst_inputs}};
}

bool AxiomReport::pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [this](const AxiomCheck& c) { return c.trials == 0 || c.max_violation <= tol; });
}

const AxiomCheck& AxiomReport::at(const std::string& axiom) const {
    for (const auto& c : checks)
        if (c.axiom == axiom) return c;
    throw UsageError("no axiom check named '" + axiom + "'");
}

double AxiomReport::max_violation() const {
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& c : checks)
        if (c.trials) v = std::max(v, c.max_violation);
    return v;
}

nlohmann::json AxiomReport::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) list.push_back(c.to_json());
    return {{"model", model}, {"seed", seed}, {"tol", tol}, {"pass", pass()}, {"checks", list}};
}

namespace {

class Ledger {
public:
    void declare(const std::string& axiom, const std::string& statement) {
        order_.push_back(axiom);
        auto& c = checks_[axiom];
        c.axiom = axiom;
        c.statement = statement;
        c.max_violation = -std::numeric_limits<double>::infinity();
    }
    void record(const std::string& axiom, double violation, const nlohmann::json& inputs) {
        auto& c = checks_.at(axiom);
        ++c.trials;
        if (violation > c.max_violation || c.trials == 1) {
            c.max_violation = violation;
            c.worst_inputs = inputs;
        }
    }
    std::vector<AxiomCheck> take() {
        std::vector<AxiomCheck> out;
        for (const auto& name : order_) out.push_back(checks_.at(name));
        return out;
    }

private:
    std::vector<std::string> order_;
    std::map<std::string, AxiomCheck> checks_;
};

double bitwise_gap(const Space& space, const Point& a, const Point& b) {
    return a == b ? 0.0 : std::max(space.distance(a, b), std::numeric_limits<double>::min());
}

} // namespace

std::vector<AxiomCheck> check_modulus(const Modulus& eta, double r_max, std::uint64_t trials,
                                      std::uint64_t seed) {
    Ledger ledger;
    ledger.declare("modulus_range", "eta(r,eps) in (0,1]");
    ledger.declare("modulus_monotone", "s <= r  =>  eta(r,eps) <= eta(s,eps)");
    if (eta.has_factorization()) {
        ledger.declare("modulus_factorization", "|eta(r,eps) - eps eta'(r,eps)| <= 1e-12");
        ledger.declare("factor_monotone", "eps1 <= eps2  =>  eta'(r,eps1) <= eta'(r,eps2)");
    }
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t s = mix_seed(seed, t);
        Rng rng(s);
        const double r = r_max * (1.0 - rng.uniform());
        const double q = r * (1.0 - rng.uniform());
        const double e1 = 2.0 * (1.0 - rng.uniform());
        const double e2 = 2.0 * (1.0 - rng.uniform());
        const nlohmann::json in{{"seed", s}, {"r", r}, {"s", q}, {"eps1", e1}, {"eps2", e2}};
        const double v = eta(r, e1);
        ledger.record("modulus_range", std::max(v - 1.0, v > 0.0 ? -v : 1.0), in);
        ledger.record("modulus_monotone", eta(r, e1) - eta(q, e1), in);
        if (eta.has_factorization()) {
            ledger.record("modulus_factorization", std::abs(v - e1 * eta.factor(r, e1)) - 1e-12, in);
            const double lo = std::min(e1, e2);
            const double hi = std::max(e1, e2);
            ledger.record("factor_monotone", eta.factor(r, lo) - eta.factor(r, hi), in);
        }
    }
    return ledger.take();
}

AxiomReport check_axioms(const Space& space, std::uint64_t trials, std::uint64_t seed, double tol) {
    if (trials < 1) throw DomainError("check_axioms needs trials >= 1");
    const bool tree = dynamic_cast<const StarTree*>(&space) != nullptr;
    const double b = space.diameter_bound();
    const Modulus& eta = space.modulus();
    const UTransform u = u_transform(eta);

    Ledger ledger;
    ledger.declare("metric_zero", "d(x,x) = 0");
    ledger.declare("metric_symmetry", "d(x,y) = d(y,x)");
    ledger.declare("metric_triangle", "d(x,z) <= d(x,y) + d(y,z)");
    ledger.declare("diameter", "d(x,y) <= b");
    ledger.declare("W1", "d(z,W(x,y,l)) <= (1-l)d(z,x) + l d(z,y)");
    ledger.declare("W2", "d(W(x,y,l),W(x,y,m)) = |l-m| d(x,y)");
    ledger.declare("W3", "W(x,y,l) = W(y,x,1-l)");
    ledger.declare("W4", "d(W(x,z,l),W(y,w,l)) <= (1-l)d(x,y) + l d(z,w)");
    ledger.declare("identity_i", "1x + 0y = x");
    ledger.declare("identity_ii", "0x + 1y = y");
    ledger.declare("identity_iii", "(1-l)x + lx = x");
    ledger.declare("identity_iv", "d(x,(1-l)x+ly) = l d(x,y)");
    ledger.declare("identity_v", "d(y,(1-l)x+ly) = (1-l) d(x,y)");
    ledger.declare("uniform_convexity", "d(x,a),d(y,a) <= r, d(x,y) >= eps r  =>  d((x+y)/2,a) <= (1-eta(r,eps)) r");
    ledger.declare("midpoint_drop", "d(x,a) <= d(y,a) <= r, d(x,y) >= eps r  =>  d((x+y)/2,a) <= d(y,a) - u(r,eps) r");
    if (tree) ledger.declare("four_point", "d(x,y)+d(z,w) <= max(d(x,z)+d(y,w), d(x,w)+d(y,z))");

    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t s = mix_seed(seed, t);
        Rng rng(s);
        Point x = space.sample(rng.engine()());
        Point y = space.sample(rng.engine()());
        Point z = space.sample(rng.engine()());
        Point w = space.sample(rng.engine()());
        Point a = space.sample(rng.engine()());
        // Degenerate configurations the plain sampler would almost never hit.
        const double shape = rng.uniform();
        if (shape < 0.05) {
            y = x;
        } else if (shape < 0.15) {
            y = space.combine(x, z, rng.uniform());
        } else if (shape < 0.2) {
            a = space.combine(x, y, rng.uniform());
        }
        const double l = rng.uniform();
        const double m = rng.coin(0.1) ? (rng.coin(0.5) ? 0.0 : 1.0) : rng.uniform();

        auto in = [&](std::initializer_list<std::pair<const char*, const Point*>> pts) {
            nlohmann::json j{{"seed", s}, {"trial", t}, {"lambda", l}, {"mu", m}};
            for (const auto& [name, p] : pts) j[name] = space.to_json(*p);
            return j;
        };

        const double dxy = space.distance(x, y);
        const double dyx = space.distance(y, x);
        const double dxz = space.distance(x, z);
        const double dyz = space.distance(y, z);
        ledger.record("metric_zero", space.distance(x, x), in({{"x", &x}}));
        ledger.record("metric_symmetry", std::abs(dxy - dyx), in({{"x", &x}, {"y", &y}}));
        ledger.record("metric_triangle", dxz - dxy - dyz, in({{"x", &x}, {"y", &y}, {"z", &z}}));
        ledger.record("diameter", dxy - b, in({{"x", &x}, {"y", &y}}));

        const Point wl = space.combine(x, y, l);
        const Point wm = space.combine(x, y, m);
        ledger.record("W1",
                      space.distance(z, wl) - ((1.0 - l) * space.distance(z, x) + l * space.distance(z, y)),
                      in({{"x", &x}, {"y", &y}, {"z", &z}}));
        ledger.record("W2", std::abs(space.distance(wl, wm) - std::abs(l - m) * dxy), in({{"x", &x}, {"y", &y}}));
        ledger.record("W3", space.distance(wl, space.combine(y, x, 1.0 - l)), in({{"x", &x}, {"y", &y}}));
        ledger.record("W4",
                      space.distance(space.combine(x, z, l), space.combine(y, w, l)) -
                          ((1.0 - l) * dxy + l * space.distance(z, w)),
                      in({{"x", &x}, {"y", &y}, {"z", &z}, {"w", &w}}));

        ledger.record("identity_i", bitwise_gap(space, space.combine(x, y, 0.0), x), in({{"x", &x}, {"y", &y}}));
        ledger.record("identity_ii", bitwise_gap(space, space.combine(x, y, 1.0), y), in({{"x", &x}, {"y", &y}}));
        ledger.record("identity_iii", space.distance(space.combine(x, x, l), x), in({{"x", &x}}));
        ledger.record("identity_iv", std::abs(space.distance(x, wl) - l * dxy), in({{"x", &x}, {"y", &y}}));
        ledger.record("identity_v", std::abs(space.distance(y, wl) - (1.0 - l) * dxy), in({{"x", &x}, {"y", &y}}));

        // Uniform convexity about a, with r at or above the larger radius and
        // eps at or below the largest value the premise allows.
        const double dxa = space.distance(x, a);
        const double dya = space.distance(y, a);
        const double r = std::max(dxa, dya) * (1.0 + 0.5 * rng.uniform() * rng.coin(0.5));
        if (r > 0.0 && dxy > 0.0) {
            const double eps = (dxy / r) * (1.0 - 0.9 * rng.uniform());
            const Point mid = space.midpoint(x, y);
            const double dma = space.distance(mid, a);
            nlohmann::json j = in({{"x", &x}, {"y", &y}, {"a", &a}});
            j["r"] = r;
            j["eps"] = eps;
            ledger.record("uniform_convexity", dma - (1.0 - eta(r, eps)) * r, j);
            const double far = std::max(dxa, dya);
            ledger.record("midpoint_drop", dma - (far - u(r, eps) * r), j);
        }

        if (tree) {
            const double dzw = space.distance(z, w);
            const double dxw = space.distance(x, w);
            const double dyw = space.distance(y, w);
            ledger.record("four_point", dxy + dzw - std::max(dxz + dyw, dxw + dyz),
                          in({{"x", &x}, {"y", &y}, {"z", &z}, {"w", &w}}));
        }
    }

    AxiomReport report;
    report.model = std::string(space.model());
    report.seed = seed;
    report.tol = tol;
    report.checks = ledger.take();
    for (auto& c : check_modulus(eta, b, trials, mix_seed(seed, trials))) report.checks.push_back(std::move(c));
    return report;
}

} // namespace ucwfp
