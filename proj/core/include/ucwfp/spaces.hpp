#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ucwfp/geometry.hpp"

namespace ucwfp {

inline constexpr double kDefaultSpaceTolerance = 1e-9;

/// Closed ball of radius R about the origin of R^n.
class EuclideanBall final : public Space {
public:
    EuclideanBall(std::size_t dimension, double radius, double tolerance = kDefaultSpaceTolerance);

    std::string_view model() const noexcept override { return "euclidean"; }
    Point sample(std::uint64_t seed) const override;
    Point anchor() const override;
    bool owns(const Point& p) const override;
    double excess(const Point& p) const override;
    nlohmann::json to_json(const Point& p) const override;
    Point from_json(const nlohmann::json& j) const override;
    nlohmann::json describe() const override;

    std::size_t dimension() const noexcept { return dimension_; }
    double radius() const noexcept { return radius_; }

    Point make(std::vector<double> coords) const;

protected:
    double do_distance(const Point& x, const Point& y) const override;
    Point do_combine(const Point& x, const Point& y, double lambda) const override;

private:
    std::size_t dimension_;
    double radius_;
};

/// Unit ball of l^2 restricted to finitely supported sequences. `sample_width`
/// is the index range [1, width] used by the sampler; the space itself admits
/// any finite support.
class SparseL2Ball final : public Space {
public:
    /// Entries with |value| <= this are dropped so supports stay finite.
    static constexpr double kDropThreshold = 1e-300;

    explicit SparseL2Ball(std::size_t sample_width = 8, double tolerance = kDefaultSpaceTolerance);

    std::string_view model() const noexcept override { return "sparse-l2"; }
    Point sample(std::uint64_t seed) const override;
    Point anchor() const override;
    bool owns(const Point& p) const override;
    double excess(const Point& p) const override;
    nlohmann::json to_json(const Point& p) const override;
    Point from_json(const nlohmann::json& j) const override;
    nlohmann::json describe() const override;

    std::size_t sample_width() const noexcept { return sample_width_; }

    /// Builds a point from (index, value) pairs; sorts, merges nothing, drops tiny values.
    static SparsePoint make(std::vector<SparseEntry> entries);
    /// e_i
    static SparsePoint unit(std::uint64_t index, double scale = 1.0);

protected:
    double do_distance(const Point& x, const Point& y) const override;
    Point do_combine(const Point& x, const Point& y, double lambda) const override;

private:
    std::size_t sample_width_;
};

/// Closed geodesic ball of radius rho about `center` in the hyperboloid model
/// of the hyperbolic plane. Points are kept on the sheet by recomputing the
/// time coordinate from the spatial ones.
class HyperboloidDisk final : public Space {
public:
    explicit HyperboloidDisk(double rho, std::optional<LorentzPoint> center = std::nullopt,
                             double tolerance = kDefaultSpaceTolerance);

    std::string_view model() const noexcept override { return "hyperboloid"; }
    Point sample(std::uint64_t seed) const override;
    Point anchor() const override { return center_; }
    bool owns(const Point& p) const override;
    double excess(const Point& p) const override;
    nlohmann::json to_json(const Point& p) const override;
    Point from_json(const nlohmann::json& j) const override;
    nlohmann::json describe() const override;

    double rho() const noexcept { return rho_; }
    const LorentzPoint& center() const noexcept { return center_; }

    /// Lifts spatial coordinates onto the sheet.
    static LorentzPoint lift(double x, double y);
    /// Point at geodesic distance r from the center in direction theta.
    LorentzPoint polar(double r, double theta) const;
    /// t^2 - x^2 - y^2 - 1
    static double sheet_defect(const LorentzPoint& p);

protected:
    double do_distance(const Point& x, const Point& y) const override;
    Point do_combine(const Point& x, const Point& y, double lambda) const override;

private:
    double rho_;
    LorentzPoint center_;
};

/// k >= 3 segments of length L glued at a common hub.
class StarTree final : public Space {
public:
    StarTree(int legs, double leg_length, double tolerance = kDefaultSpaceTolerance);

    std::string_view model() const noexcept override { return "startree"; }
    Point sample(std::uint64_t seed) const override;
    Point anchor() const override { return hub(); }
    bool owns(const Point& p) const override;
    double excess(const Point& p) const override;
    nlohmann::json to_json(const Point& p) const override;
    Point from_json(const nlohmann::json& j) const override;
    nlohmann::json describe() const override;

    int legs() const noexcept { return legs_; }
    double leg_length() const noexcept { return leg_length_; }

    static TreePoint hub() { return TreePoint{0, 0.0}; }
    /// Canonical point; offset 0 on any leg is the hub. Validates ranges.
    TreePoint at(int leg, double offset) const;

protected:
    double do_distance(const Point& x, const Point& y) const override;
    Point do_combine(const Point& x, const Point& y, double lambda) const override;

private:
    int legs_;
    double leg_length_;
};

/// Parsed form of the JSON object {model, n?, R?, k?, L?, rho?, center?, tol?}.
struct SpaceConfig {
    std::string model;
    std::optional<std::size_t> n;
    std::optional<double> radius;
    std::optional<int> legs;
    std::optional<double> leg_length;
    std::optional<double> rho;
    std::optional<nlohmann::json> center;
    std::optional<double> tol;

    static SpaceConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Throws ConfigError on unknown models or invalid parameters.
SpacePtr make_space(const SpaceConfig& config);
SpacePtr make_space(const nlohmann::json& config);

/// Convenience: samplePoint(space, seed).
inline Point sample_point(const Space& space, std::uint64_t seed) { return space.sample(seed); }

} // namespace ucwfp
