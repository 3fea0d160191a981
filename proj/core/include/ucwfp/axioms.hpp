#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucwfp/geometry.hpp"

namespace ucwfp {

/// Largest observed violation of one sampled inequality or identity.
/// A violation <= 0 means the check held on every sample.
struct AxiomCheck {
    std::string axiom;
    std::string statement;
    std::uint64_t trials = 0;
    double max_violation = 0.0;
    nlohmann::json worst_inputs;

    nlohmann::json to_json() const;
};

struct AxiomReport {
    std::string model;
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::vector<AxiomCheck> checks;

    bool pass() const;
    const AxiomCheck& at(const std::string& axiom) const;
    /// Largest violation across all checks.
    double max_violation() const;
    nlohmann::json to_json() const;
};

/// Samples `trials` configurations of points and parameters from the space's
/// own sampler (plus degenerate variants: repeated points, points on a common
/// geodesic) and measures:
///   metric_zero, metric_symmetry, metric_triangle, diameter
///   W1..W4
///   identity_i..identity_v     (1x+0y = x, 0x+1y = y, (1-l)x+lx = x,
///                               d(x,W(x,y,l)) = l d(x,y), d(y,W(x,y,l)) = (1-l) d(x,y))
///   uniform_convexity          d(x,a), d(y,a) <= r, d(x,y) >= eps r  =>  d(mid, a) <= (1 - eta(r,eps)) r
///   midpoint_drop              d(x,a) <= d(y,a) <= r, d(x,y) >= eps r  =>  d(mid, a) <= d(y,a) - u(r,eps) r
///   four_point                 (StarTree only) Gromov four-point condition
/// Every trial uses the seed mix_seed(seed, trial), which is reported with the
/// worst inputs so that it can be replayed alone. Never throws on violation.
AxiomReport check_axioms(const Space& space, std::uint64_t trials, std::uint64_t seed, double tol);

/// Sampled properties of a modulus over r in (0, r_max], eps in (0, 2]:
///   modulus_range (eta in (0,1]), modulus_monotone (s <= r => eta(r,e) <= eta(s,e)),
///   and, when a factorization is declared, modulus_factorization
///   (|eta - eps eta'| <= 1e-12) and factor_monotone (eta' nondecreasing in eps).
std::vector<AxiomCheck> check_modulus(const Modulus& modulus, double r_max, std::uint64_t trials,
                                      std::uint64_t seed);

} // namespace ucwfp
