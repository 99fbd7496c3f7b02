#pragma once

#include <string>
#include <vector>

#include "kising/bloch.hpp"
#include "kising/errors.hpp"

namespace kising {

enum class MeanFieldMode { unitary, dissipative };

/// Homogeneous mean-field trajectory: states[t] is the state after t steps,
/// states[0] = (0, 0, 1).
struct MeanFieldTrace {
    std::vector<BlochState> states;
    DriveParams params;
    double xi = 0.0;
    MeanFieldMode mode = MeanFieldMode::unitary;
};

/// One kick of the self-consistent unitary mean field: rotate_x(h), then the
/// mean-field Z rotation with half-angle J*xi*z_prev. z_prev is <Z> at the
/// start of the step (the previous step's output).
[[nodiscard]] inline BlochState step_unitary(const BlochState& s, const DriveParams& params,
                                             double xi, double z_prev) {
    return rotate_z(rotate_x(s, params.h), params.J * xi * z_prev);
}

/// step_unitary followed by the self-consistent dephasing channel with
/// variance xi*(1 - z_prev^2). Same z_prev feeds the rotation and the
/// variance; both descend from the same neighbour-fluctuation decomposition.
[[nodiscard]] inline BlochState step_dissipative(const BlochState& s, const DriveParams& params,
                                                 double xi, double z_prev) {
    const double variance = xi * (1.0 - z_prev * z_prev);
    const double p = dephasing_probability(variance, params.J);
    return dephase(step_unitary(s, params, xi, z_prev), p);
}

/// Iterate the chosen step from |0>, recording every intermediate state.
[[nodiscard]] inline MeanFieldTrace run_meanfield(const DriveParams& params, double xi,
                                                  MeanFieldMode mode) {
    if (params.steps < 0) {
        throw validation_error("steps must be >= 0, got " + std::to_string(params.steps));
    }
    MeanFieldTrace trace;
    trace.params = params;
    trace.xi = xi;
    trace.mode = mode;
    trace.states.reserve(static_cast<std::size_t>(params.steps) + 1);
    trace.states.push_back(BlochState{0.0, 0.0, 1.0});
    for (int t = 0; t < params.steps; ++t) {
        const BlochState& s = trace.states.back();
        const double z_prev = s.z;
        trace.states.push_back(mode == MeanFieldMode::unitary
                                   ? step_unitary(s, params, xi, z_prev)
                                   : step_dissipative(s, params, xi, z_prev));
    }
    return trace;
}

}  // namespace kising
