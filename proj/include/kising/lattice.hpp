#pragma once

#include <string>
#include <vector>

#include "kising/bloch.hpp"
#include "kising/errors.hpp"
#include "kising/topology.hpp"

namespace kising {

/// Site-resolved mean-field state: one Bloch vector per qubit of a graph.
struct LatticeState {
    std::vector<BlochState> sites;
};

[[nodiscard]] inline LatticeState initial_lattice_state(const ConnectivityGraph& g) {
    return LatticeState{std::vector<BlochState>(static_cast<std::size_t>(g.n_qubits()),
                                                BlochState{0.0, 0.0, 1.0})};
}

[[nodiscard]] inline std::vector<double> site_magnetizations(const LatticeState& state) {
    std::vector<double> z;
    z.reserve(state.sites.size());
    for (const auto& s : state.sites) z.push_back(s.z);
    return z;
}

[[nodiscard]] inline double mean_magnetization(const LatticeState& state) {
    double sum = 0.0;
    for (const auto& s : state.sites) sum += s.z;
    return sum / static_cast<double>(state.sites.size());
}

/**
 * Synchronous site-resolved dissipative mean-field step.
 *
 * Every site reads the incoming state's z-values: site j gets rotate_x(h),
 * then a Z rotation with half-angle J * sum_k Lambda_jk z_k, then dephasing
 * with variance sum_k Lambda_jk (1 - z_k^2). On a k-regular graph this
 * collapses to the homogeneous engine with xi = k.
 */
[[nodiscard]] inline LatticeState step_lattice(const LatticeState& state,
                                               const ConnectivityGraph& g,
                                               const DriveParams& params) {
    const std::size_t n = static_cast<std::size_t>(g.n_qubits());
    if (state.sites.size() != n) {
        throw validation_error("lattice state has " + std::to_string(state.sites.size()) +
                               " sites, graph has " + std::to_string(n) + " qubits");
    }
    LatticeState next;
    next.sites.resize(n);
    // Per-site updates are independent given the frozen incoming z-values.
    for (std::size_t j = 0; j < n; ++j) {
        double field = 0.0;
        double variance = 0.0;
        for (int k : g.neighbors(static_cast<int>(j))) {
            const double zk = state.sites[static_cast<std::size_t>(k)].z;
            field += zk;
            variance += 1.0 - zk * zk;
        }
        BlochState s = rotate_x(state.sites[j], params.h);
        s = rotate_z(s, params.J * field);
        next.sites[j] = dephase(s, dephasing_probability(variance, params.J));
    }
    return next;
}

/// Lattice trajectory; states[t] is the full lattice after t steps.
struct LatticeTrace {
    std::vector<LatticeState> states;
    DriveParams params;
};

[[nodiscard]] inline LatticeTrace run_lattice(const ConnectivityGraph& g,
                                              const DriveParams& params) {
    if (params.steps < 0) {
        throw validation_error("steps must be >= 0, got " + std::to_string(params.steps));
    }
    LatticeTrace trace;
    trace.params = params;
    trace.states.reserve(static_cast<std::size_t>(params.steps) + 1);
    trace.states.push_back(initial_lattice_state(g));
    for (int t = 0; t < params.steps; ++t) {
        trace.states.push_back(step_lattice(trace.states.back(), g, params));
    }
    return trace;
}

}  // namespace kising
