#include "ucwfp/mappings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ucwfp/error.hpp"
#include "ucwfp/random.hpp"
#include "ucwfp/spaces.hpp"

namespace ucwfp {

AsymptoticMap::AsymptoticMap(std::string name, ApplyFn apply, KFn k, WitnessFn witness,
                             std::vector<Point> fixed_points, nlohmann::json params)
    : name_(std::move(name)),
      apply_(std::move(apply)),
      k_(std::move(k)),
      witness_(std::move(witness)),
      fixed_points_(std::move(fixed_points)),
      params_(std::move(params)) {}

Point AsymptoticMap::power(std::uint64_t m, const Point& x) const {
    Point out = x;
    for (std::uint64_t i = 0; i < m; ++i) out = apply(out);
    return out;
}

double AsymptoticMap::k(std::uint64_t n) const {
    if (n < 1) throw DomainError("k_n is defined for n >= 1");
    return k_(n);
}

std::uint64_t AsymptoticMap::k_witness(double eps) const {
    if (!(eps > 0.0)) throw DomainError("k_witness needs eps > 0");
    return std::max<std::uint64_t>(1, witness_(eps));
}

bool AsymptoticMap::vanishing_k_up_to(std::uint64_t horizon) const {
    for (std::uint64_t n = 1; n <= horizon; ++n)
        if (k(n) != 0.0) return false;
    return true;
}

nlohmann::json AsymptoticMap::describe() const {
    nlohmann::json j = params_;
    j["map"] = name_;
    return j;
}

namespace {

AsymptoticMap::KFn zero_k() {
    return [](std::uint64_t) { return 0.0; };
}

AsymptoticMap::WitnessFn first_index() {
    return [](double) -> std::uint64_t { return 1; };
}

double read_number(const nlohmann::json& j, const char* key, std::optional<double> fallback) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(std::string("map parameter '") + key + "' is required");
    }
    if (!j[key].is_number()) throw ConfigError(std::string("map parameter '") + key + "' must be a number");
    const double v = j[key].get<double>();
    if (!std::isfinite(v)) throw ConfigError(std::string("map parameter '") + key + "' must be finite");
    return v;
}

} // namespace

MapPtr make_rotation(const SpacePtr& space, double angle) {
    const auto* ball = dynamic_cast<const EuclideanBall*>(space.get());
    if (ball == nullptr || ball->dimension() != 2)
        throw ConfigError("rotation needs a 2-dimensional euclidean space");
    if (!std::isfinite(angle)) throw ConfigError("rotation angle must be finite");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    auto apply = [c, s](const Point& x) {
        const auto& v = x.as<VectorPoint>().coords;
        return Point{VectorPoint{{c * v[0] - s * v[1], s * v[0] + c * v[1]}}};
    };
    return std::make_shared<AsymptoticMap>("rotation", apply, zero_k(), first_index(),
                                           std::vector<Point>{space->anchor()},
                                           nlohmann::json{{"angle", angle}});
}

MapPtr make_contraction(const SpacePtr& space, double c, std::optional<Point> target) {
    if (!(c > 0.0 && c < 1.0)) throw ConfigError("contraction needs c in (0,1)");
    Point q = target ? *target : space->anchor();
    if (!space->owns(q)) throw ConfigError("contraction target does not belong to the space");
    auto apply = [space, q, c](const Point& x) { return space->combine(x, q, c); };
    return std::make_shared<AsymptoticMap>(
        "contraction", apply, zero_k(), first_index(), std::vector<Point>{q},
        nlohmann::json{{"c", c}, {"target", space->to_json(q)}});
}

MapPtr make_goebel_kirk(const SpacePtr& space, double ratio) {
    if (dynamic_cast<const SparseL2Ball*>(space.get()) == nullptr)
        throw ConfigError("goebelkirk needs a sparse-l2 space");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("goebelkirk ratio must lie in (0,1)");

    // a_i for i = 2, 3, ... until the factor rounds to 1; beyond that a_i == 1.
    auto weights = std::make_shared<std::vector<double>>();
    for (double e = 1.0 - ratio;; e *= ratio) {
        const double a = std::exp2(-e);
        if (a == 1.0) break;
        weights->push_back(a);
    }
    auto weight = [weights](std::uint64_t i) {
        const std::uint64_t slot = i - 2;
        return slot < weights->size() ? (*weights)[slot] : 1.0;
    };

    auto apply = [weight](const Point& x) {
        const auto& in = x.as<SparsePoint>().entries();
        std::vector<SparseEntry> out;
        out.reserve(in.size());
        for (const auto& e : in) {
            const double v = e.index == 1 ? e.value * e.value : weight(e.index) * e.value;
            if (std::abs(v) > SparseL2Ball::kDropThreshold) out.push_back({e.index + 1, v});
        }
        return Point{SparsePoint(std::move(out))};
    };
    auto k = [ratio](std::uint64_t n) {
        return std::expm1(std::numbers::ln2 * std::pow(ratio, static_cast<double>(n - 1)));
    };
    auto witness = [ratio, k](double eps) -> std::uint64_t {
        // k_n <= eps  <=>  r^{n-1} <= log2(1 + eps); k is decreasing in n.
        const double target = std::log1p(eps) / std::numbers::ln2;
        double guess = 1.0 + std::log(target) / std::log(ratio);
        std::uint64_t n = guess <= 1.0 ? 1 : static_cast<std::uint64_t>(std::ceil(guess));
        while (n > 1 && k(n - 1) <= eps) --n;
        while (k(n) > eps) ++n;
        return n;
    };
    return std::make_shared<AsymptoticMap>("goebelkirk", apply, k, witness,
                                           std::vector<Point>{space->anchor()},
                                           nlohmann::json{{"ratio", ratio}});
}

MapPtr make_tree_fold(const SpacePtr& space, double c, int shift) {
    const auto* tree = dynamic_cast<const StarTree*>(space.get());
    if (tree == nullptr) throw ConfigError("treefold needs a startree space");
    if (!(c >= 0.0 && c < 1.0)) throw ConfigError("treefold needs c in [0,1)");
    const int k = tree->legs();
    const int s = ((shift % k) + k) % k;
    if (c == 0.0 && s == 0) throw ConfigError("treefold with c = 0 and no leg shift is the identity");
    auto apply = [k, s, c](const Point& x) {
        const auto& p = x.as<TreePoint>();
        if (p.leg == 0) return x;
        const double offset = (1.0 - c) * p.offset;
        if (offset == 0.0) return Point{StarTree::hub()};
        return Point{TreePoint{(p.leg - 1 + s) % k + 1, offset}};
    };
    return std::make_shared<AsymptoticMap>("treefold", apply, zero_k(), first_index(),
                                           std::vector<Point>{Point{StarTree::hub()}},
                                           nlohmann::json{{"c", c}, {"shift", shift}});
}

MapPtr make_map(const SpacePtr& space, const nlohmann::json& config) {
    if (!config.is_object() || !config.contains("map") || !config["map"].is_string())
        throw ConfigError("map config needs a string 'map'");
    std::string name = config["map"].get<std::string>();
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (name == "rotation") return make_rotation(space, read_number(config, "angle", std::nullopt));
    if (name == "contraction" || name == "geodesiccontraction") {
        std::optional<Point> target;
        if (config.contains("target")) target = space->from_json(config["target"]);
        return make_contraction(space, read_number(config, "c", std::nullopt), target);
    }
    if (name == "goebelkirk") return make_goebel_kirk(space, read_number(config, "ratio", 0.5));
    if (name == "treefold") {
        int shift = 1;
        if (config.contains("shift")) {
            if (!config["shift"].is_number_integer()) throw ConfigError("treefold 'shift' must be an integer");
            shift = config["shift"].get<int>();
        }
        return make_tree_fold(space, read_number(config, "c", std::nullopt), shift);
    }
    throw ConfigError("unknown map '" + name + "'");
}

nlohmann::json MapReport::to_json() const {
    return {{"horizon", horizon},
            {"trials", trials},
            {"seed", seed},
            {"maxViolation", max_violation},
            {"worst", worst},
            {"witnessViolation", witness_violation},
            {"fixedPointResidual", fixed_point_residual}};
}

MapReport verify_asymptotic_bound(const AsymptoticMap& map, const Space& space, std::uint64_t horizon,
                                  std::uint64_t trials, std::uint64_t seed) {
    if (horizon < 1) throw DomainError("verify_asymptotic_bound needs horizon >= 1");
    MapReport r;
    r.horizon = horizon;
    r.trials = trials;
    r.seed = seed;
    r.max_violation = -std::numeric_limits<double>::infinity();

    std::vector<double> ks(horizon + 1, 0.0);
    for (std::uint64_t n = 1; n <= horizon; ++n) ks[n] = map.k(n);

    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t sx = mix_seed(seed, 2 * t);
        const std::uint64_t sy = mix_seed(seed, 2 * t + 1);
        Point x = space.sample(sx);
        Point y = space.sample(sy);
        const double d0 = space.distance(x, y);
        for (std::uint64_t n = 1; n <= horizon; ++n) {
            x = map.apply(x);
            y = map.apply(y);
            const double v = space.distance(x, y) - (1.0 + ks[n]) * d0;
            if (v > r.max_violation) {
                r.max_violation = v;
                r.worst = {{"trial", t}, {"seedX", sx}, {"seedY", sy}, {"n", n}, {"d0", d0}};
            }
        }
    }
    if (trials == 0) r.max_violation = 0.0;

    r.witness_violation = -std::numeric_limits<double>::infinity();
    for (int e = 1; e <= 40; ++e) {
        const double eps = std::ldexp(1.0, -e);
        const std::uint64_t w = map.k_witness(eps);
        for (std::uint64_t n = w; n <= std::max(w, horizon); ++n)
            r.witness_violation = std::max(r.witness_violation, map.k(n) - eps);
    }

    for (const auto& p : map.known_fixed_points())
        r.fixed_point_residual = std::max(r.fixed_point_residual, space.distance(map.apply(p), p));
    return r;
}

} // namespace ucwfp
