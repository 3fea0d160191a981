#pragma once

// Test-only reference computations. Each one is written from the definitions
// with no shared code from the library, so a match is evidence rather than a
// tautology.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "ucwfp/geometry.hpp"
#include "ucwfp/iteration.hpp"

namespace oracle {

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long double d = static_cast<long double>(a[i]) - b[i];
        s += d * d;
    }
    return static_cast<double>(std::sqrt(s));
}

inline std::map<std::uint64_t, double> dense(const ucwfp::SparsePoint& p) {
    std::map<std::uint64_t, double> m;
    for (const auto& e : p.entries()) m[e.index] += e.value;
    return m;
}

inline double sparse(const ucwfp::SparsePoint& a, const ucwfp::SparsePoint& b) {
    auto m = dense(a);
    for (const auto& e : b.entries()) m[e.index] -= e.value;
    long double s = 0.0L;
    for (const auto& [i, v] : m) s += static_cast<long double>(v) * v;
    return static_cast<double>(std::sqrt(s));
}

/// arccosh of the negated Minkowski product, in long double.
inline double hyperbolic(const ucwfp::LorentzPoint& a, const ucwfp::LorentzPoint& b) {
    const long double B = static_cast<long double>(a.t) * b.t - static_cast<long double>(a.x) * b.x -
                          static_cast<long double>(a.y) * b.y;
    return static_cast<double>(std::acosh(B < 1.0L ? 1.0L : B));
}

/// Path length in a star of segments: along one leg, or out through the hub.
inline double tree(const ucwfp::TreePoint& a, const ucwfp::TreePoint& b) {
    if (a.leg == b.leg) return std::abs(a.offset - b.offset);
    return a.offset + b.offset;
}

inline double distance(const ucwfp::Point& a, const ucwfp::Point& b) {
    if (a.holds<ucwfp::VectorPoint>()) return euclid(a.as<ucwfp::VectorPoint>().coords, b.as<ucwfp::VectorPoint>().coords);
    if (a.holds<ucwfp::SparsePoint>()) return sparse(a.as<ucwfp::SparsePoint>(), b.as<ucwfp::SparsePoint>());
    if (a.holds<ucwfp::LorentzPoint>()) return hyperbolic(a.as<ucwfp::LorentzPoint>(), b.as<ucwfp::LorentzPoint>());
    return tree(a.as<ucwfp::TreePoint>(), b.as<ucwfp::TreePoint>());
}

/// Canonical weights a_i = (1/2)^((1/2)^(i-1)), i >= 2.
inline double gk_weight(std::uint64_t i) { return std::pow(0.5, std::pow(0.5, static_cast<double>(i - 1))); }

/// (x_1, x_2, ...) -> (0, x_1^2, a_2 x_2, a_3 x_3, ...) on a dense map.
inline std::map<std::uint64_t, double> gk_apply(const std::map<std::uint64_t, double>& x) {
    std::map<std::uint64_t, double> out;
    for (const auto& [i, v] : x) {
        if (v == 0.0) continue;
        out[i + 1] = i == 1 ? v * v : gk_weight(i) * v;
    }
    return out;
}

/// 2 a_2 ... a_n - 1 as an explicit product.
inline double gk_k(std::uint64_t n) {
    long double prod = 1.0L;
    for (std::uint64_t i = 2; i <= n; ++i) prod *= gk_weight(i);
    return static_cast<double>(2.0L * prod - 1.0L);
}

/// First n >= 1 with k_n <= tau and k_{n+1} <= tau, by linear scan.
inline std::uint64_t find_n(const std::function<double(std::uint64_t)>& k, double tau, std::uint64_t limit = 100000) {
    for (std::uint64_t n = 1; n < limit; ++n)
        if (k(n) <= tau && k(n + 1) <= tau) return n;
    return 0;
}

/// p_k by the last-occurrence rule, scanning all rows for every k.
inline std::vector<std::size_t> brute_pk(const std::vector<std::size_t>& m) {
    std::vector<std::size_t> p;
    std::size_t after = 0;
    for (std::size_t k = 1;; ++k) {
        std::size_t last = 0;
        for (std::size_t j = after + 1; j <= m.size(); ++j)
            if (m[j - 1] == k) last = j;
        if (last == 0) break;
        p.push_back(last);
        after = last;
    }
    return p;
}

inline std::vector<std::size_t> row_lengths(const ucwfp::Trajectory& t) {
    std::vector<std::size_t> m;
    for (std::size_t j = 1; j <= t.rows(); ++j) m.push_back(t.m(j));
    return m;
}

} // namespace oracle
