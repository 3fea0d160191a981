#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace ucwfp {

// ---------------------------------------------------------------------------
// Points
//
// A Point is an immutable value whose payload depends on the model that
// produced it. Spaces check the payload alternative (and shape) before
// measuring or combining, so a point can only be used with a compatible space.
// ---------------------------------------------------------------------------

/// Coordinates in R^n.
struct VectorPoint {
    std::vector<double> coords;
    bool operator==(const VectorPoint&) const = default;
};

/// One nonzero coordinate of a finitely supported sequence (1-based index).
struct SparseEntry {
    std::uint64_t index;
    double value;
    bool operator==(const SparseEntry&) const = default;
};

/// Finitely supported real sequence. Entries are sorted by index and hold no
/// explicit zeros. Storage is shared between copies; it is never mutated.
class SparsePoint {
public:
    SparsePoint();
    explicit SparsePoint(std::vector<SparseEntry> entries);

    const std::vector<SparseEntry>& entries() const noexcept { return *entries_; }
    std::size_t support_size() const noexcept { return entries_->size(); }
    bool shares_storage_with(const SparsePoint& other) const noexcept {
        return entries_ == other.entries_;
    }
    double value_at(std::uint64_t index) const;
    double norm() const;

    bool operator==(const SparsePoint& other) const;

private:
    std::shared_ptr<const std::vector<SparseEntry>> entries_;
};

/// Point on the upper sheet of the hyperboloid t^2 - x^2 - y^2 = 1.
struct LorentzPoint {
    double t = 1.0;
    double x = 0.0;
    double y = 0.0;
    bool operator==(const LorentzPoint&) const = default;
};

/// Point of a star-shaped R-tree. leg 0 with offset 0 is the hub.
struct TreePoint {
    int leg = 0;
    double offset = 0.0;
    bool operator==(const TreePoint&) const = default;
};

class Point {
public:
    using Payload = std::variant<VectorPoint, SparsePoint, LorentzPoint, TreePoint>;

    Point() = default;
    Point(VectorPoint p) : payload_(std::move(p)) {}
    Point(SparsePoint p) : payload_(std::move(p)) {}
    Point(LorentzPoint p) : payload_(p) {}
    Point(TreePoint p) : payload_(p) {}

    template <class T>
    bool holds() const noexcept { return std::holds_alternative<T>(payload_); }
    template <class T>
    const T& as() const { return std::get<T>(payload_); }
    template <class T>
    const T* get_if() const noexcept { return std::get_if<T>(&payload_); }

    const Payload& payload() const noexcept { return payload_; }

    /// Bitwise equality of the payload.
    bool operator==(const Point& other) const { return payload_ == other.payload_; }

private:
    Payload payload_;
};

// ---------------------------------------------------------------------------
// Modulus of uniform convexity
// ---------------------------------------------------------------------------

/// eta(r, eps) together with its monotonicity metadata. When a factor
/// eta' is supplied it is a promise that eta(r, eps) = eps * eta'(r, eps) with
/// eta' nondecreasing in eps; check_modulus() samples both claims.
class Modulus {
public:
    using Fn = std::function<double(double r, double eps)>;

    Modulus(std::string name, Fn eta, bool monotone_in_r, std::optional<Fn> factor = std::nullopt);

    double operator()(double r, double eps) const { return eta_(r, eps); }

    const std::string& name() const noexcept { return name_; }
    bool monotone_in_r() const noexcept { return monotone_; }
    bool has_factorization() const noexcept { return factor_.has_value(); }
    /// eta'(r, eps); requires has_factorization().
    double factor(double r, double eps) const;

    /// The quadratic CAT(0) modulus eps^2/8, factored as eps * (eps/8).
    static Modulus cat0();
    /// eta == c. Monotone in r, no factorization.
    static Modulus constant(double c);

private:
    std::string name_;
    Fn eta_;
    bool monotone_;
    std::optional<Fn> factor_;
};

/// Guaranteed midpoint drop coefficient derived from a modulus:
///   u(r, eps) = eta(r, eps)            when eta factors as eps * eta',
///   u(r, eps) = (eps / 2) * eta(r, eps) otherwise.
/// For a, x, y with d(x,a) <= d(y,a) <= r and d(x,y) >= eps*r the midpoint
/// satisfies d((x+y)/2, a) <= d(y,a) - u(r,eps)*r.
class UTransform {
public:
    explicit UTransform(Modulus modulus);

    double operator()(double r, double eps) const;
    /// True when the transform returns eta unchanged.
    bool is_identity() const noexcept { return identity_; }

private:
    Modulus modulus_;
    bool identity_;
};

UTransform u_transform(const Modulus& modulus);

// ---------------------------------------------------------------------------
// Space contract
// ---------------------------------------------------------------------------

/// A bounded complete UCW-hyperbolic space: metric, convex combinator
/// W(x, y, lambda) = (1-lambda)x + lambda y, diameter bound and modulus.
///
/// Implementations must make the metric exactly symmetric in floating point
/// (d(x,y) and d(y,x) bitwise equal); the iteration engine relies on it when
/// it reuses cached distances in reversed argument order.
class Space {
public:
    Space(double diameter_bound, Modulus modulus, double tolerance);
    virtual ~Space() = default;

    Space(const Space&) = delete;
    Space& operator=(const Space&) = delete;

    virtual std::string_view model() const noexcept = 0;

    /// Throws UsageError if either point was not produced by a compatible space.
    double distance(const Point& x, const Point& y) const;

    /// W(x, y, lambda). Throws DomainError for lambda outside [0,1].
    /// Returns x for lambda == 0 or x == y, and y for lambda == 1, so the
    /// corresponding identities hold bitwise.
    Point combine(const Point& x, const Point& y, double lambda) const;
    Point midpoint(const Point& x, const Point& y) const { return combine(x, y, 0.5); }

    /// Deterministic per seed.
    virtual Point sample(std::uint64_t seed) const = 0;
    /// Distinguished point: the center of the ball, the origin, the hub.
    virtual Point anchor() const = 0;

    /// Structural membership: right payload kind and shape.
    virtual bool owns(const Point& p) const = 0;
    /// How far p lies outside the domain (0 when inside).
    virtual double excess(const Point& p) const = 0;

    virtual nlohmann::json to_json(const Point& p) const = 0;
    /// Parses and validates a point literal. Throws DomainError / ConfigError.
    virtual Point from_json(const nlohmann::json& j) const = 0;
    /// The configuration that rebuilds this space.
    virtual nlohmann::json describe() const = 0;

    double diameter_bound() const noexcept { return diameter_bound_; }
    const Modulus& modulus() const noexcept { return modulus_; }
    double tolerance() const noexcept { return tolerance_; }

protected:
    virtual double do_distance(const Point& x, const Point& y) const = 0;
    virtual Point do_combine(const Point& x, const Point& y, double lambda) const = 0;

    void require_owned(const Point& p, std::string_view what) const;

private:
    double diameter_bound_;
    Modulus modulus_;
    double tolerance_;
};

using SpacePtr = std::shared_ptr<const Space>;

} // namespace ucwfp
