#pragma once

#include <cstdint>
#include <random>

namespace ucwfp {

/// SplitMix64 finalizer. Used to derive independent per-trial seeds from a
/// (seed, stream) pair so that every sampled check can be replayed alone.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Thin wrapper over mt19937_64 with the handful of draws the samplers need.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    std::uint64_t index(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
    }
    bool coin(double p) { return uniform() < p; }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace ucwfp
