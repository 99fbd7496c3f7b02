#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "kising/bloch.hpp"
#include "kising/errors.hpp"
#include "kising/rng.hpp"

namespace kising {

struct StabilizerParams {
    double theta_h = 0.0;  // full angle, restricted to [0, pi/2]
    int steps = 0;
};

/// The squared form reproduces the closed decay law; the linear form is the
/// intermediate ansatz kept only for comparison (the two disagree except at
/// the endpoints).
enum class AlphaModel { squared, linear };

namespace detail {

inline void check_theta(double theta_h) {
    if (!(theta_h >= 0.0 && theta_h <= pi / 2)) {
        throw validation_error("theta_h " + std::to_string(theta_h) +
                               " outside [0, pi/2], where the stabilizer ansatz is anchored");
    }
}

}  // namespace detail

/// (delta alpha)^2: zero at theta_h = pi/2, maximal (pi/2)^2 at theta_h = 0.
[[nodiscard]] inline double alpha_variance(double theta_h,
                                           AlphaModel model = AlphaModel::squared) {
    detail::check_theta(theta_h);
    const double lin = 1.0 - 2.0 * theta_h / pi;
    const double base = pi * pi / 4.0;
    return model == AlphaModel::squared ? base * lin * lin : base * lin;
}

/// Effective X'-flip probability p0 = (1 - exp(-2 (delta alpha)^2)) / 2.
[[nodiscard]] inline double flip_probability(double theta_h,
                                             AlphaModel model = AlphaModel::squared) {
    return 0.5 * (1.0 - std::exp(-2.0 * alpha_variance(theta_h, model)));
}

/// <Z'(t)> = (1 - 2 p0)^t; with the squared form this equals
/// exp(-t (pi^2/2) (1 - 2 theta_h/pi)^2).
[[nodiscard]] inline double stabilizer_expectation(const StabilizerParams& params,
                                                   AlphaModel model = AlphaModel::squared) {
    detail::check_theta(params.theta_h);
    if (params.steps < 0) {
        throw validation_error("steps must be >= 0");
    }
    return std::pow(1.0 - 2.0 * flip_probability(params.theta_h, model), params.steps);
}

/// Monte Carlo of the +-1 chain that flips with probability p0 each step.
/// Deterministic per seed; mean converges to stabilizer_expectation.
[[nodiscard]] inline double flip_process_simulate(const StabilizerParams& params,
                                                  std::uint64_t n_samples, std::uint64_t seed,
                                                  AlphaModel model = AlphaModel::squared) {
    detail::check_theta(params.theta_h);
    if (params.steps < 0) throw validation_error("steps must be >= 0");
    if (n_samples < 1) throw validation_error("n_samples must be >= 1");
    const double p0 = flip_probability(params.theta_h, model);
    const auto steps = static_cast<std::uint64_t>(params.steps);

    double total = 0.0;
    constexpr std::uint64_t chunk = 1u << 16;
    for (std::uint64_t lo = 0; lo < n_samples; lo += chunk) {
        const std::uint64_t hi = std::min(n_samples, lo + chunk);
        double chunk_sum = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            int sign = 1;
            for (std::uint64_t t = 0; t < steps; ++t) {
                if (rng::uniform_at(seed, i * steps + t) <= p0) sign = -sign;
            }
            chunk_sum += sign;
        }
        total += chunk_sum;
    }
    return total / static_cast<double>(n_samples);
}

}  // namespace kising
