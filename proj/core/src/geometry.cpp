#include "ucwfp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ucwfp/error.hpp"

namespace ucwfp {

SparsePoint::SparsePoint() : entries_(std::make_shared<const std::vector<SparseEntry>>()) {}

SparsePoint::SparsePoint(std::vector<SparseEntry> entries)
    : entries_(std::make_shared<const std::vector<SparseEntry>>(std::move(entries))) {}

double SparsePoint::value_at(std::uint64_t index) const {
    const auto& e = *entries_;
    auto it = std::lower_bound(e.begin(), e.end(), index,
                               [](const SparseEntry& s, std::uint64_t i) { return s.index < i; });
    return (it != e.end() && it->index == index) ? it->value : 0.0;
}

double SparsePoint::norm() const {
    double sum = 0.0;
    for (const auto& e : *entries_) sum += e.value * e.value;
    return std::sqrt(sum);
}

bool SparsePoint::operator==(const SparsePoint& other) const {
    return entries_ == other.entries_ || *entries_ == *other.entries_;
}

// ---------------------------------------------------------------------------

Modulus::Modulus(std::string name, Fn eta, bool monotone_in_r, std::optional<Fn> factor)
    : name_(std::move(name)), eta_(std::move(eta)), monotone_(monotone_in_r), factor_(std::move(factor)) {
    if (!eta_) throw ConfigError("modulus '" + name_ + "' has no evaluation function");
    if (!monotone_) throw ConfigError("modulus '" + name_ + "' is not monotone; UCW spaces need a monotone modulus");
}

double Modulus::factor(double r, double eps) const {
    if (!factor_) throw PreconditionError("modulus '" + name_ + "' has no factorization");
    return (*factor_)(r, eps);
}

Modulus Modulus::cat0() {
    return Modulus(
        "cat0", [](double, double eps) { return eps * eps / 8.0; }, true,
        Fn([](double, double eps) { return eps / 8.0; }));
}

Modulus Modulus::constant(double c) {
    if (!(c > 0.0 && c <= 1.0)) throw ConfigError("constant modulus must lie in (0,1]");
    return Modulus("constant", [c](double, double) { return c; }, true);
}

UTransform::UTransform(Modulus modulus)
    : modulus_(std::move(modulus)), identity_(modulus_.has_factorization()) {}

double UTransform::operator()(double r, double eps) const {
    if (identity_) return modulus_(r, eps);
    return 0.5 * eps * modulus_(r, eps);
}

UTransform u_transform(const Modulus& modulus) { return UTransform(modulus); }

// ---------------------------------------------------------------------------

Space::Space(double diameter_bound, Modulus modulus, double tolerance)
    : diameter_bound_(diameter_bound), modulus_(std::move(modulus)), tolerance_(tolerance) {
    if (!(diameter_bound_ > 0.0) || !std::isfinite(diameter_bound_))
        throw ConfigError("diameter bound must be positive and finite");
    if (!(tolerance_ > 0.0)) throw ConfigError("space tolerance must be positive");
}

void Space::require_owned(const Point& p, std::string_view what) const {
    if (!owns(p))
        throw UsageError(std::string(what) + ": point does not belong to this " + std::string(model()) +
                         " space");
}

double Space::distance(const Point& x, const Point& y) const {
    require_owned(x, "distance");
    require_owned(y, "distance");
    return do_distance(x, y);
}

Point Space::combine(const Point& x, const Point& y, double lambda) const {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw DomainError("combine: lambda must lie in [0,1], got " + std::to_string(lambda));
    require_owned(x, "combine");
    require_owned(y, "combine");
    if (lambda == 0.0 || x == y) return x;
    if (lambda == 1.0) return y;
    return do_combine(x, y, lambda);
}

} // namespace ucwfp
