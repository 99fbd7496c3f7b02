#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "kising/bloch.hpp"
#include "kising/errors.hpp"
#include "kising/rng.hpp"

namespace kising {

/// Configuration for Monte Carlo realizations of the dephasing derivation.
/// `variance` is Var[dZ] (the quantity called (delta z)^2), not a standard
/// deviation.
struct SamplerConfig {
    std::uint64_t n_samples = 1;
    std::uint64_t seed = 1;
    double J = pi / 4;
    double variance = 0.0;
};

struct MomentEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

namespace detail {

inline constexpr std::uint64_t chunk_size = 1u << 16;

inline void check_config(const SamplerConfig& cfg) {
    if (cfg.n_samples < 1) {
        throw validation_error("n_samples must be >= 1");
    }
    if (!(cfg.variance >= 0.0)) {
        throw validation_error("variance " + std::to_string(cfg.variance) + " must be >= 0");
    }
}

inline double std_error_from_sums(double sum, double sum_sq, std::uint64_t n) {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = std::max(0.0, (sum_sq - nn * mean * mean) / (nn - 1.0));
    return std::sqrt(var / nn);
}

/// Accumulate f(sample index) over [0, n) in fixed-size chunks combined in
/// index order, so the reduction is bit-identical however the chunks are
/// scheduled. f writes its per-sample contributions into `sums`/`sum_sqs`.
template <typename PerSample, std::size_t K>
void chunked_accumulate(std::uint64_t n, PerSample&& per_sample,
                        std::array<double, K>& sums, std::array<double, K>& sum_sqs) {
    sums.fill(0.0);
    sum_sqs.fill(0.0);
    for (std::uint64_t lo = 0; lo < n; lo += chunk_size) {
        const std::uint64_t hi = std::min(n, lo + chunk_size);
        std::array<double, K> cs{}, cq{};
        for (std::uint64_t i = lo; i < hi; ++i) {
            std::array<double, K> v{};
            per_sample(i, v);
            for (std::size_t k = 0; k < K; ++k) {
                cs[k] += v[k];
                cq[k] += v[k] * v[k];
            }
        }
        for (std::size_t k = 0; k < K; ++k) {
            sums[k] += cs[k];
            sum_sqs[k] += cq[k];
        }
    }
}

}  // namespace detail

/// Measured coherence shrink factor: the sample mean of cos(2J dZ) with
/// dZ ~ Normal(0, variance). Converges to exp(-2 J^2 variance).
[[nodiscard]] inline MomentEstimate empirical_shrink(const SamplerConfig& cfg) {
    detail::check_config(cfg);
    const double sigma = std::sqrt(cfg.variance);
    std::array<double, 1> sum{}, sum_sq{};
    detail::chunked_accumulate(
        cfg.n_samples,
        [&](std::uint64_t i, std::array<double, 1>& v) {
            v[0] = std::cos(2.0 * cfg.J * sigma * rng::gaussian_at(cfg.seed, i));
        },
        sum, sum_sq);
    return {sum[0] / static_cast<double>(cfg.n_samples),
            detail::std_error_from_sums(sum[0], sum_sq[0], cfg.n_samples)};
}

/// Sample mean of sin(2J dZ); the odd moment of the centred Gaussian, so it
/// should vanish within sampling error. Checks that the averaged rotation
/// has no coherent drift term.
[[nodiscard]] inline MomentEstimate empirical_sin_moment(const SamplerConfig& cfg) {
    detail::check_config(cfg);
    const double sigma = std::sqrt(cfg.variance);
    std::array<double, 1> sum{}, sum_sq{};
    detail::chunked_accumulate(
        cfg.n_samples,
        [&](std::uint64_t i, std::array<double, 1>& v) {
            v[0] = std::sin(2.0 * cfg.J * sigma * rng::gaussian_at(cfg.seed, i));
        },
        sum, sum_sq);
    return {sum[0] / static_cast<double>(cfg.n_samples),
            detail::std_error_from_sums(sum[0], sum_sq[0], cfg.n_samples)};
}

/// Ensemble average of random Z rotations with angle 2J dZ applied to `s`,
/// plus per-component standard errors. The z component is exact per sample.
struct SampledState {
    BlochState mean;
    BlochState std_error;  // component-wise standard errors
};

[[nodiscard]] inline SampledState sample_dephase(const BlochState& s, const SamplerConfig& cfg) {
    detail::check_config(cfg);
    const double sigma = std::sqrt(cfg.variance);
    if (sigma == 0.0 || cfg.J == 0.0) {
        // every sample is the identity rotation; skip the redundant average
        return {s, BlochState{0.0, 0.0, 0.0}};
    }
    std::array<double, 2> sum{}, sum_sq{};
    detail::chunked_accumulate(
        cfg.n_samples,
        [&](std::uint64_t i, std::array<double, 2>& v) {
            const double a = 2.0 * cfg.J * sigma * rng::gaussian_at(cfg.seed, i);
            const double c = std::cos(a), sn = std::sin(a);
            v[0] = s.x * c + s.y * sn;
            v[1] = s.y * c - s.x * sn;
        },
        sum, sum_sq);
    const double n = static_cast<double>(cfg.n_samples);
    SampledState out;
    out.mean = {sum[0] / n, sum[1] / n, s.z};
    out.std_error = {detail::std_error_from_sums(sum[0], sum_sq[0], cfg.n_samples),
                     detail::std_error_from_sums(sum[1], sum_sq[1], cfg.n_samples), 0.0};
    return out;
}

/// Diagnostic: shrink factor with dZ drawn as a sum of xi_tilde independent
/// +-1 spins of mean z, minus the mean. Probes the central-limit
/// approximation at small connectivity; no tolerance is attached to the gap
/// from the Gaussian closed form.
[[nodiscard]] inline MomentEstimate empirical_shrink_discrete(std::uint64_t n_samples,
                                                              std::uint64_t seed, double J,
                                                              int xi_tilde, double z) {
    if (n_samples < 1) throw validation_error("n_samples must be >= 1");
    if (xi_tilde < 0) throw validation_error("xi_tilde must be >= 0");
    if (!(z >= -1.0 && z <= 1.0)) throw validation_error("z must lie in [-1, 1]");
    const double p_up = 0.5 * (1.0 + z);
    const auto m = static_cast<std::uint64_t>(xi_tilde);
    std::array<double, 1> sum{}, sum_sq{};
    detail::chunked_accumulate(
        n_samples,
        [&](std::uint64_t i, std::array<double, 1>& v) {
            double neighbour_sum = 0.0;
            for (std::uint64_t k = 0; k < m; ++k) {
                neighbour_sum += (rng::uniform_at(seed, i * m + k) <= p_up) ? 1.0 : -1.0;
            }
            const double d = neighbour_sum - static_cast<double>(xi_tilde) * z;
            v[0] = std::cos(2.0 * J * d);
        },
        sum, sum_sq);
    return {sum[0] / static_cast<double>(n_samples),
            detail::std_error_from_sums(sum[0], sum_sq[0], n_samples)};
}

/// Monte Carlo trajectory realization of the dissipative mean field: an
/// ensemble of pure states where each step applies rotate_x(h) and then a Z
/// rotation with half-angle J*(xi*zbar + dZ_i), dZ_i ~ Normal(0,
/// xi*(1-zbar^2)), zbar the ensemble mean magnetization at the start of the
/// step. The ensemble average converges to the deterministic dissipative
/// engine; its spread gives the standard errors.
struct TrajectoryTrace {
    std::vector<BlochState> mean_states;  // one per step 0..t
    std::vector<BlochState> std_errors;   // component-wise, zero at step 0
    DriveParams params;
    double xi = 0.0;
};

[[nodiscard]] inline TrajectoryTrace run_trajectories(const DriveParams& params, double xi,
                                                      std::uint64_t n_samples,
                                                      std::uint64_t seed) {
    if (params.steps < 0) throw validation_error("steps must be >= 0");
    if (n_samples < 1) throw validation_error("n_samples must be >= 1");

    std::vector<BlochState> traj(n_samples, BlochState{0.0, 0.0, 1.0});
    TrajectoryTrace trace;
    trace.params = params;
    trace.xi = xi;
    trace.mean_states.push_back(BlochState{0.0, 0.0, 1.0});
    trace.std_errors.push_back(BlochState{0.0, 0.0, 0.0});

    const auto n = static_cast<double>(n_samples);
    for (int step = 0; step < params.steps; ++step) {
        const double zbar = trace.mean_states.back().z;
        const double sigma = std::sqrt(std::max(0.0, xi * (1.0 - zbar * zbar)));
        const std::uint64_t base = static_cast<std::uint64_t>(step) * n_samples;

        std::array<double, 3> sum{}, sum_sq{};
        detail::chunked_accumulate(
            n_samples,
            [&](std::uint64_t i, std::array<double, 3>& v) {
                const double dz = sigma * rng::gaussian_at(seed, base + i);
                BlochState s = rotate_x(traj[i], params.h);
                s = rotate_z(s, params.J * (xi * zbar + dz));
                traj[i] = s;
                v[0] = s.x;
                v[1] = s.y;
                v[2] = s.z;
            },
            sum, sum_sq);
        trace.mean_states.push_back({sum[0] / n, sum[1] / n, sum[2] / n});
        trace.std_errors.push_back(
            {detail::std_error_from_sums(sum[0], sum_sq[0], n_samples),
             detail::std_error_from_sums(sum[1], sum_sq[1], n_samples),
             detail::std_error_from_sums(sum[2], sum_sq[2], n_samples)});
    }
    return trace;
}

}  // namespace kising
