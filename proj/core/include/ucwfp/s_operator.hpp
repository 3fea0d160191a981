#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucwfp/geometry.hpp"
#include "ucwfp/mappings.hpp"

namespace ucwfp {

enum class SMode { general, shortcut };

std::string to_string(SMode mode);
SMode parse_s_mode(const std::string& text);

struct SOptions {
    SMode mode = SMode::general;
    /// d(x, Tx) <= fix_tol is treated as Tx = x. Defaults to 1e-12 * b.
    std::optional<double> fix_tol;
    /// Shortcut mode is accepted only if k_n == 0 for n up to this index.
    std::uint64_t shortcut_horizon = 64;
};

enum class SBranch { fixed, shortcut, general };

/// How one application of S was resolved.
struct SDecision {
    SBranch branch = SBranch::fixed;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    double threshold = 0.0;
    double dx_tx = 0.0;

    nlohmann::json to_json() const;
    bool operator==(const SDecision&) const = default;
};

struct SResult {
    Point point;
    SDecision decision;
};

/// Exponent chosen by find_m together with the image T^m x.
struct Exponent {
    std::uint64_t m;
    Point image;
};

/// The operator S built from an asymptotically nonexpansive T:
///   Sx = x                       if d(x, Tx) <= fix_tol,
///   Sx = Tx                      in shortcut mode,
///   Sx = midpoint(T^m x, x)      otherwise,
/// with n minimal such that k_n, k_{n+1} <= min(d/(2b), 2 eta(b, d/(2b)))
/// for d = d(x, Tx), and m in {n, n+1} minimal with d(T^m x, x) >= d(Tx, x)/(2 + k_1).
///
/// S shares its fixed points with T, is quasi-nonexpansive and moves every
/// non-fixed point by at least d(Tx, x) / (2(2 + k_1)).
class SOperator {
public:
    SOperator(SpacePtr space, MapPtr map, SOptions options = {});

    const Space& space() const noexcept { return *space_; }
    const SpacePtr& space_ptr() const noexcept { return space_; }
    const AsymptoticMap& map() const noexcept { return *map_; }
    const MapPtr& map_ptr() const noexcept { return map_; }
    SMode mode() const noexcept { return mode_; }
    double fix_tol() const noexcept { return fix_tol_; }
    double k1() const noexcept { return k1_; }

    /// min(d/(2b), 2 eta(b, d/(2b))) for d = d(x, Tx). Throws PreconditionError
    /// when d(x, Tx) <= fix_tol.
    double threshold(const Point& x) const;
    double threshold_for_displacement(double dx_tx) const;

    /// Minimal n >= 1 with k_n <= tau and k_{n+1} <= tau. Throws MapContractError
    /// if the map's witness does not deliver such an n.
    std::uint64_t find_n(double tau) const;

    /// Minimal m in {n, n+1} with d(T^m x, x) >= d(Tx, x)/(2 + k_1).
    /// Throws NumericalContradiction if neither exponent qualifies.
    Exponent find_m(const Point& x, std::uint64_t n) const;

    SResult apply(const Point& x) const;
    Point operator()(const Point& x) const { return apply(x).point; }

private:
    Exponent find_m(const Point& x, const Point& tx, double dx_tx, std::uint64_t n) const;

    SpacePtr space_;
    MapPtr map_;
    SMode mode_;
    double fix_tol_;
    double k1_;
};

/// Outcome of one sampled property of S.
struct PropertyCheck {
    std::string name;
    std::string statement;
    std::uint64_t checked = 0;
    /// Smallest slack observed (negative means violated); +inf when nothing was checked.
    double worst_margin = 0.0;
    double tol = 0.0;
    nlohmann::json witness;

    bool pass() const { return worst_margin >= -tol; }
    nlohmann::json to_json() const;
};

struct SPropertyReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<PropertyCheck> checks;

    bool pass() const;
    const PropertyCheck& at(const std::string& name) const;
    nlohmann::json to_json() const;
};

/// Samples `trials` points and follows each for `horizon` further applications
/// of S, checking on every visited x:
///   displacement          d(Sx, x) >= d(Tx, x)/(2(2 + k_1))
///   fixed_band            d(x, Tx) <= fix_tol  <=>  d(x, Sx) <= fix_tol/(2(2 + k_1))
///   quasi_nonexpansive    d(Sx, p) <= d(x, p) for each known fixed point p
///   midpoint_identity     d(x, Sx) = d(x, T^m x)/2 (general branch)
///   fixed_point_exact     Sp == p bitwise for each known fixed point p
SPropertyReport check_s_properties(const SOperator& op, std::uint64_t trials, std::uint64_t seed,
                                   std::uint64_t horizon = 0, double tol = 1e-10);

} // namespace ucwfp
