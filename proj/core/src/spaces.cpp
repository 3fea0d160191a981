#include "ucwfp/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ucwfp/error.hpp"
#include "ucwfp/random.hpp"

namespace ucwfp {

namespace {

double finite_number(const nlohmann::json& j, const char* what) {
    if (!j.is_number()) throw ConfigError(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(std::string(what) + " must be finite");
    return v;
}

} // namespace

// ---------------------------------------------------------------------------
// EuclideanBall
// ---------------------------------------------------------------------------

EuclideanBall::EuclideanBall(std::size_t dimension, double radius, double tolerance)
    : Space(2.0 * radius, Modulus::cat0(), tolerance), dimension_(dimension), radius_(radius) {
    if (dimension_ < 1) throw ConfigError("euclidean: n must be >= 1");
    if (!(radius_ > 0.0)) throw ConfigError("euclidean: R must be > 0");
}

Point EuclideanBall::make(std::vector<double> coords) const {
    Point p{VectorPoint{std::move(coords)}};
    require_owned(p, "euclidean point");
    return p;
}

bool EuclideanBall::owns(const Point& p) const {
    const auto* v = p.get_if<VectorPoint>();
    return v != nullptr && v->coords.size() == dimension_;
}

double EuclideanBall::excess(const Point& p) const {
    require_owned(p, "excess");
    double sum = 0.0;
    for (double c : p.as<VectorPoint>().coords) sum += c * c;
    return std::max(0.0, std::sqrt(sum) - radius_);
}

double EuclideanBall::do_distance(const Point& x, const Point& y) const {
    const auto& a = x.as<VectorPoint>().coords;
    const auto& b = y.as<VectorPoint>().coords;
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

Point EuclideanBall::do_combine(const Point& x, const Point& y, double lambda) const {
    const auto& a = x.as<VectorPoint>().coords;
    const auto& b = y.as<VectorPoint>().coords;
    std::vector<double> out(a.size());
    const double mu = 1.0 - lambda;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = mu * a[i] + lambda * b[i];
    return Point{VectorPoint{std::move(out)}};
}

Point EuclideanBall::sample(std::uint64_t seed) const {
    Rng rng(seed);
    std::vector<double> v(dimension_);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& c : v) {
            c = rng.normal();
            norm += c * c;
        }
        norm = std::sqrt(norm);
    } while (norm == 0.0);
    const double r = radius_ * std::pow(rng.uniform(), 1.0 / static_cast<double>(dimension_));
    for (auto& c : v) c *= r / norm;
    return Point{VectorPoint{std::move(v)}};
}

Point EuclideanBall::anchor() const { return Point{VectorPoint{std::vector<double>(dimension_, 0.0)}}; }

nlohmann::json EuclideanBall::to_json(const Point& p) const {
    require_owned(p, "to_json");
    return p.as<VectorPoint>().coords;
}

Point EuclideanBall::from_json(const nlohmann::json& j) const {
    if (!j.is_array() || j.size() != dimension_)
        throw ConfigError("euclidean point must be an array of " + std::to_string(dimension_) + " numbers");
    std::vector<double> c;
    c.reserve(dimension_);
    for (const auto& v : j) c.push_back(finite_number(v, "coordinate"));
    Point p{VectorPoint{std::move(c)}};
    if (excess(p) > tolerance()) throw DomainError("euclidean point lies outside the ball");
    return p;
}

nlohmann::json EuclideanBall::describe() const {
    return {{"model", "euclidean"}, {"n", dimension_}, {"R", radius_}, {"tol", tolerance()}};
}

// ---------------------------------------------------------------------------
// SparseL2Ball
// ---------------------------------------------------------------------------

SparseL2Ball::SparseL2Ball(std::size_t sample_width, double tolerance)
    : Space(2.0, Modulus::cat0(), tolerance), sample_width_(sample_width) {
    if (sample_width_ < 1) throw ConfigError("sparse-l2: n (sample width) must be >= 1");
}

SparsePoint SparseL2Ball::make(std::vector<SparseEntry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i].index == entries[i - 1].index) throw ConfigError("sparse point has a repeated index");
    for (const auto& e : entries)
        if (e.index == 0) throw ConfigError("sparse indices are 1-based");
    std::erase_if(entries, [](const SparseEntry& e) { return !(std::abs(e.value) > kDropThreshold); });
    return SparsePoint(std::move(entries));
}

SparsePoint SparseL2Ball::unit(std::uint64_t index, double scale) { return make({{index, scale}}); }

bool SparseL2Ball::owns(const Point& p) const { return p.holds<SparsePoint>(); }

double SparseL2Ball::excess(const Point& p) const {
    require_owned(p, "excess");
    return std::max(0.0, p.as<SparsePoint>().norm() - 1.0);
}

double SparseL2Ball::do_distance(const Point& x, const Point& y) const {
    const auto& px = x.as<SparsePoint>();
    const auto& py = y.as<SparsePoint>();
    if (px.shares_storage_with(py)) return 0.0;
    const auto& a = px.entries();
    const auto& b = py.entries();
    double sum = 0.0;
    std::size_t i = 0;
    std::size_t k = 0;
    while (i < a.size() || k < b.size()) {
        double d;
        if (k == b.size() || (i < a.size() && a[i].index < b[k].index)) {
            d = a[i++].value;
        } else if (i == a.size() || b[k].index < a[i].index) {
            d = b[k++].value;
        } else {
            d = a[i++].value - b[k++].value;
        }
        sum += d * d;
    }
    return std::sqrt(sum);
}

Point SparseL2Ball::do_combine(const Point& x, const Point& y, double lambda) const {
    const auto& a = x.as<SparsePoint>().entries();
    const auto& b = y.as<SparsePoint>().entries();
    const double mu = 1.0 - lambda;
    std::vector<SparseEntry> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t k = 0;
    while (i < a.size() || k < b.size()) {
        SparseEntry e;
        if (k == b.size() || (i < a.size() && a[i].index < b[k].index)) {
            e = {a[i].index, mu * a[i].value};
            ++i;
        } else if (i == a.size() || b[k].index < a[i].index) {
            e = {b[k].index, lambda * b[k].value};
            ++k;
        } else {
            e = {a[i].index, mu * a[i].value + lambda * b[k].value};
            ++i;
            ++k;
        }
        if (std::abs(e.value) > kDropThreshold) out.push_back(e);
    }
    return Point{SparsePoint(std::move(out))};
}

Point SparseL2Ball::sample(std::uint64_t seed) const {
    Rng rng(seed);
    const auto support = static_cast<std::size_t>(rng.index(1, sample_width_));
    std::vector<std::uint64_t> indices(sample_width_);
    std::iota(indices.begin(), indices.end(), 1);
    std::shuffle(indices.begin(), indices.end(), rng.engine());
    indices.resize(support);
    std::sort(indices.begin(), indices.end());

    std::vector<SparseEntry> entries;
    double norm = 0.0;
    while (norm == 0.0) {
        entries.clear();
        norm = 0.0;
        for (auto idx : indices) {
            const double v = rng.normal();
            entries.push_back({idx, v});
            norm += v * v;
        }
        norm = std::sqrt(norm);
    }
    const double r = std::pow(rng.uniform(), 1.0 / static_cast<double>(support));
    for (auto& e : entries) e.value *= r / norm;
    return Point{make(std::move(entries))};
}

Point SparseL2Ball::anchor() const { return Point{SparsePoint()}; }

nlohmann::json SparseL2Ball::to_json(const Point& p) const {
    require_owned(p, "to_json");
    nlohmann::json j = nlohmann::json::object();
    for (const auto& e : p.as<SparsePoint>().entries()) j[std::to_string(e.index)] = e.value;
    return j;
}

Point SparseL2Ball::from_json(const nlohmann::json& j) const {
    if (!j.is_object()) throw ConfigError("sparse-l2 point must be an object {index: value}");
    std::vector<SparseEntry> entries;
    for (const auto& [key, value] : j.items()) {
        std::uint64_t idx = 0;
        try {
            std::size_t used = 0;
            idx = std::stoull(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw ConfigError("sparse-l2 index '" + key + "' is not a positive integer");
        }
        entries.push_back({idx, finite_number(value, "sparse value")});
    }
    Point p{make(std::move(entries))};
    if (excess(p) > tolerance()) throw DomainError("sparse-l2 point lies outside the unit ball");
    return p;
}

nlohmann::json SparseL2Ball::describe() const {
    return {{"model", "sparse-l2"}, {"n", sample_width_}, {"tol", tolerance()}};
}

// ---------------------------------------------------------------------------
// HyperboloidDisk
// ---------------------------------------------------------------------------

LorentzPoint HyperboloidDisk::lift(double x, double y) {
    return LorentzPoint{std::sqrt(1.0 + x * x + y * y), x, y};
}

double HyperboloidDisk::sheet_defect(const LorentzPoint& p) {
    return p.t * p.t - p.x * p.x - p.y * p.y - 1.0;
}

HyperboloidDisk::HyperboloidDisk(double rho, std::optional<LorentzPoint> center, double tolerance)
    : Space(2.0 * rho, Modulus::cat0(), tolerance), rho_(rho), center_(lift(0.0, 0.0)) {
    if (!(rho_ > 0.0) || !std::isfinite(rho_)) throw ConfigError("hyperboloid: rho must be > 0");
    if (rho_ > 300.0) throw ConfigError("hyperboloid: rho too large for double precision");
    if (center) center_ = lift(center->x, center->y);
}

bool HyperboloidDisk::owns(const Point& p) const { return p.holds<LorentzPoint>(); }

double HyperboloidDisk::excess(const Point& p) const {
    require_owned(p, "excess");
    return std::max(0.0, do_distance(Point{center_}, p) - rho_);
}

// d = arccosh(1 + q/2) where q = <x-y, x-y> in the Minkowski form. The time
// difference is recovered from the spatial coordinates,
//   t_a - t_b = ((a-b).(a+b)) / (t_a + t_b),
// which avoids cancellation for nearby points and keeps d exactly symmetric.
double HyperboloidDisk::do_distance(const Point& x, const Point& y) const {
    const auto& a = x.as<LorentzPoint>();
    const auto& b = y.as<LorentzPoint>();
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dt = (dx * (a.x + b.x) + dy * (a.y + b.y)) / (a.t + b.t);
    const double q = dx * dx + dy * dy - dt * dt;
    if (!(q > 0.0)) return 0.0;
    const double h = 0.5 * q;
    return std::log1p(h + std::sqrt(h * (h + 2.0)));
}

Point HyperboloidDisk::do_combine(const Point& x, const Point& y, double lambda) const {
    const auto& a = x.as<LorentzPoint>();
    const auto& b = y.as<LorentzPoint>();
    const double d = do_distance(x, y);
    if (d == 0.0) return x;
    const double s = std::sinh(d);
    const double ca = std::sinh((1.0 - lambda) * d) / s;
    const double cb = std::sinh(lambda * d) / s;
    return Point{lift(ca * a.x + cb * b.x, ca * a.y + cb * b.y)};
}

LorentzPoint HyperboloidDisk::polar(double r, double theta) const {
    const double vt = std::cosh(r);
    const double vx = std::sinh(r) * std::cos(theta);
    const double vy = std::sinh(r) * std::sin(theta);
    // Boost taking the base point (1,0,0) to the center.
    const double dot = center_.x * vx + center_.y * vy;
    const double k = vt + dot / (1.0 + center_.t);
    return lift(vx + k * center_.x, vy + k * center_.y);
}

Point HyperboloidDisk::sample(std::uint64_t seed) const {
    Rng rng(seed);
    // Area element sinh(r) dr dtheta.
    const double r = std::acosh(1.0 + rng.uniform() * (std::cosh(rho_) - 1.0));
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return Point{polar(std::min(r, rho_), theta)};
}

nlohmann::json HyperboloidDisk::to_json(const Point& p) const {
    require_owned(p, "to_json");
    const auto& q = p.as<LorentzPoint>();
    return nlohmann::json::array({q.t, q.x, q.y});
}

Point HyperboloidDisk::from_json(const nlohmann::json& j) const {
    if (!j.is_array() || j.size() != 3) throw ConfigError("hyperboloid point must be [x0, x1, x2]");
    const double t = finite_number(j[0], "x0");
    const double x = finite_number(j[1], "x1");
    const double y = finite_number(j[2], "x2");
    if (!(t > 0.0)) throw DomainError("hyperboloid point must have x0 > 0");
    const LorentzPoint raw{t, x, y};
    if (std::abs(sheet_defect(raw)) > 1e-8 * std::max(1.0, t * t))
        throw DomainError("hyperboloid point is not on the sheet x0^2 - x1^2 - x2^2 = 1");
    Point p{lift(x, y)};
    if (excess(p) > tolerance()) throw DomainError("hyperboloid point lies outside the disk");
    return p;
}

nlohmann::json HyperboloidDisk::describe() const {
    return {{"model", "hyperboloid"},
            {"rho", rho_},
            {"center", nlohmann::json::array({center_.t, center_.x, center_.y})},
            {"tol", tolerance()}};
}

// ---------------------------------------------------------------------------
// StarTree
// ---------------------------------------------------------------------------

StarTree::StarTree(int legs, double leg_length, double tolerance)
    : Space(2.0 * leg_length, Modulus::cat0(), tolerance), legs_(legs), leg_length_(leg_length) {
    if (legs_ < 3) throw ConfigError("startree: k must be >= 3");
    if (!(leg_length_ > 0.0) || !std::isfinite(leg_length_)) throw ConfigError("startree: L must be > 0");
}

TreePoint StarTree::at(int leg, double offset) const {
    if (!(offset >= 0.0 && offset <= leg_length_)) throw DomainError("startree: offset outside [0, L]");
    if (offset == 0.0) return hub();
    if (leg < 1 || leg > legs_) throw DomainError("startree: leg outside [1, k]");
    return TreePoint{leg, offset};
}

bool StarTree::owns(const Point& p) const {
    const auto* t = p.get_if<TreePoint>();
    if (t == nullptr || t->leg < 0 || t->leg > legs_) return false;
    return t->leg != 0 || t->offset == 0.0;
}

double StarTree::excess(const Point& p) const {
    require_owned(p, "excess");
    const double o = p.as<TreePoint>().offset;
    return std::max({0.0, o - leg_length_, -o});
}

double StarTree::do_distance(const Point& x, const Point& y) const {
    const auto& a = x.as<TreePoint>();
    const auto& b = y.as<TreePoint>();
    if (a.leg == b.leg) return std::abs(a.offset - b.offset);
    return a.offset + b.offset;
}

// Arclength interpolation along the unique path x -> hub -> y.
Point StarTree::do_combine(const Point& x, const Point& y, double lambda) const {
    const auto& a = x.as<TreePoint>();
    const auto& b = y.as<TreePoint>();
    TreePoint out;
    if (a.leg == b.leg) {
        out = TreePoint{a.leg, (1.0 - lambda) * a.offset + lambda * b.offset};
    } else {
        const double s = lambda * (a.offset + b.offset);
        out = s <= a.offset ? TreePoint{a.leg, a.offset - s} : TreePoint{b.leg, s - a.offset};
    }
    if (out.offset == 0.0) out = hub();
    return Point{out};
}

Point StarTree::sample(std::uint64_t seed) const {
    Rng rng(seed);
    if (rng.coin(0.05)) return Point{hub()};
    const int leg = static_cast<int>(rng.index(1, static_cast<std::uint64_t>(legs_)));
    const double offset = rng.uniform() * leg_length_;
    return Point{offset == 0.0 ? hub() : TreePoint{leg, offset}};
}

nlohmann::json StarTree::to_json(const Point& p) const {
    require_owned(p, "to_json");
    const auto& t = p.as<TreePoint>();
    return {{"leg", t.leg}, {"offset", t.offset}};
}

Point StarTree::from_json(const nlohmann::json& j) const {
    if (!j.is_object() || !j.contains("leg") || !j.contains("offset"))
        throw ConfigError("startree point must be {leg, offset}");
    if (!j["leg"].is_number_integer()) throw ConfigError("startree leg must be an integer");
    const double offset = finite_number(j["offset"], "offset");
    if (offset < 0.0 || offset > leg_length_ + tolerance()) throw DomainError("startree: offset outside [0, L]");
    return Point{at(j["leg"].get<int>(), std::min(offset, leg_length_))};
}

nlohmann::json StarTree::describe() const {
    return {{"model", "startree"}, {"k", legs_}, {"L", leg_length_}, {"tol", tolerance()}};
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

SpaceConfig SpaceConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("space config must be a JSON object");
    if (!j.contains("model") || !j["model"].is_string()) throw ConfigError("space config needs a string 'model'");
    SpaceConfig c;
    c.model = j["model"].get<std::string>();
    if (c.model == "tree") c.model = "startree";
    if (c.model == "sparse" || c.model == "sparsel2" || c.model == "l2") c.model = "sparse-l2";

    auto number = [&](std::initializer_list<const char*> keys) -> std::optional<double> {
        for (const char* k : keys)
            if (j.contains(k)) return finite_number(j[k], k);
        return std::nullopt;
    };
    if (j.contains("n")) {
        if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
            throw ConfigError("space 'n' must be a positive integer");
        c.n = j["n"].get<std::size_t>();
    }
    if (j.contains("k")) {
        if (!j["k"].is_number_integer()) throw ConfigError("space 'k' must be an integer");
        c.legs = j["k"].get<int>();
    }
    c.radius = number({"R"});
    c.leg_length = number({"L"});
    c.rho = number({"rho", "ρ"});
    c.tol = number({"tol"});
    if (j.contains("center")) c.center = j["center"];
    return c;
}

nlohmann::json SpaceConfig::to_json() const {
    nlohmann::json j{{"model", model}};
    if (n) j["n"] = *n;
    if (radius) j["R"] = *radius;
    if (legs) j["k"] = *legs;
    if (leg_length) j["L"] = *leg_length;
    if (rho) j["rho"] = *rho;
    if (center) j["center"] = *center;
    if (tol) j["tol"] = *tol;
    return j;
}

SpacePtr make_space(const SpaceConfig& c) {
    const double tol = c.tol.value_or(kDefaultSpaceTolerance);
    if (!(tol > 0.0)) throw ConfigError("space 'tol' must be > 0");
    if (c.model == "euclidean") return std::make_shared<EuclideanBall>(c.n.value_or(2), c.radius.value_or(1.0), tol);
    if (c.model == "sparse-l2") return std::make_shared<SparseL2Ball>(c.n.value_or(8), tol);
    if (c.model == "hyperboloid") {
        std::optional<LorentzPoint> center;
        if (c.center) {
            const auto& cj = *c.center;
            if (!cj.is_array() || cj.size() != 3) throw ConfigError("hyperboloid center must be [x0, x1, x2]");
            const LorentzPoint raw{finite_number(cj[0], "x0"), finite_number(cj[1], "x1"), finite_number(cj[2], "x2")};
            if (!(raw.t > 0.0) || std::abs(HyperboloidDisk::sheet_defect(raw)) > 1e-8 * std::max(1.0, raw.t * raw.t))
                throw ConfigError("hyperboloid center is not on the upper sheet");
            center = raw;
        }
        return std::make_shared<HyperboloidDisk>(c.rho.value_or(1.0), center, tol);
    }
    if (c.model == "startree") return std::make_shared<StarTree>(c.legs.value_or(3), c.leg_length.value_or(1.0), tol);
    throw ConfigError("unknown space model '" + c.model + "'");
}

SpacePtr make_space(const nlohmann::json& config) { return make_space(SpaceConfig::from_json(config)); }

} // namespace ucwfp
