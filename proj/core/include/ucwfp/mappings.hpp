#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucwfp/geometry.hpp"

namespace ucwfp {

/// A self-map T of a space that is asymptotically nonexpansive with respect
/// to a null sequence (k_n):  d(T^n x, T^n y) <= (1 + k_n) d(x, y).
///
/// The witness function is part of the contract: for every eps > 0,
/// k_n <= eps for all n >= k_witness(eps). Searches over n rely on it to
/// terminate.
class AsymptoticMap {
public:
    using ApplyFn = std::function<Point(const Point&)>;
    using KFn = std::function<double(std::uint64_t n)>;
    using WitnessFn = std::function<std::uint64_t(double eps)>;

    AsymptoticMap(std::string name, ApplyFn apply, KFn k, WitnessFn witness,
                  std::vector<Point> fixed_points = {}, nlohmann::json params = nlohmann::json::object());

    const std::string& name() const noexcept { return name_; }
    const nlohmann::json& params() const noexcept { return params_; }

    Point apply(const Point& x) const { return apply_(x); }
    /// T^m x by sequential application; power(0, x) == x.
    Point power(std::uint64_t m, const Point& x) const;

    /// k_n for n >= 1.
    double k(std::uint64_t n) const;
    /// Index N with k_n <= eps for all n >= N. Requires eps > 0.
    std::uint64_t k_witness(double eps) const;

    /// Fixed points known in closed form; used by monitors only.
    const std::vector<Point>& known_fixed_points() const noexcept { return fixed_points_; }

    /// True when k_n == 0 for every n in [1, horizon].
    bool vanishing_k_up_to(std::uint64_t horizon) const;

    /// The configuration that rebuilds this map ({map, ...}).
    nlohmann::json describe() const;

private:
    std::string name_;
    ApplyFn apply_;
    KFn k_;
    WitnessFn witness_;
    std::vector<Point> fixed_points_;
    nlohmann::json params_;
};

using MapPtr = std::shared_ptr<const AsymptoticMap>;

/// Rotation by `angle` about the origin of a 2-dimensional EuclideanBall.
MapPtr make_rotation(const SpacePtr& space, double angle);

/// T x = (1-c) x + c q. Nonexpansive (a (1-c)-contraction); Fix = {q}.
MapPtr make_contraction(const SpacePtr& space, double c, std::optional<Point> target = std::nullopt);

/// Weighted shift on the sparse l^2 ball,
///   T(x_1, x_2, x_3, ...) = (0, x_1^2, a_2 x_2, a_3 x_3, ...),
/// with a_i = 2^{-(1-r) r^{i-2}} so that prod_{i>=2} a_i = 1/2.
///
/// T^n has Lipschitz constant max(2 a_2...a_n, 1) on the unit ball (the
/// square term contributes |x_1^2 - y_1^2| <= 2|x_1 - y_1|), hence
///   k_n = 2 prod_{i=2}^n a_i - 1 = 2^{r^{n-1}} - 1,
/// which is 1 at n = 1 and decreases to 0.
MapPtr make_goebel_kirk(const SpacePtr& space, double ratio = 0.5);

/// On a StarTree: (leg, t) -> (sigma(leg), (1-c) t) with sigma the cyclic
/// shift of legs by `shift`. Nonexpansive; Fix = {hub} unless c = 0 and
/// sigma = id, which is rejected.
MapPtr make_tree_fold(const SpacePtr& space, double c, int shift = 1);

/// {map: "rotation", angle} | {map: "contraction", c, target?} |
/// {map: "goebelkirk", ratio?} | {map: "treefold", c, shift?}.
/// Throws ConfigError for unknown names, bad parameters or a space the map
/// cannot act on.
MapPtr make_map(const SpacePtr& space, const nlohmann::json& config);

/// Sampled check of the asymptotic Lipschitz bound and of the map's other
/// declared properties.
struct MapReport {
    std::uint64_t horizon = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    /// max over sampled pairs and n <= horizon of d(T^n x, T^n y) - (1 + k_n) d(x, y).
    double max_violation = 0.0;
    nlohmann::json worst;
    /// max of k_n - eps over eps in a grid and n in [k_witness(eps), horizon].
    double witness_violation = 0.0;
    /// max d(T p, p) over declared fixed points.
    double fixed_point_residual = 0.0;

    bool pass(double tol) const {
        return max_violation <= tol && witness_violation <= 0.0 && fixed_point_residual <= tol;
    }
    nlohmann::json to_json() const;
};

MapReport verify_asymptotic_bound(const AsymptoticMap& map, const Space& space, std::uint64_t horizon,
                                  std::uint64_t trials, std::uint64_t seed);

} // namespace ucwfp
