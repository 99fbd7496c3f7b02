#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "kising/bloch.hpp"
#include "kising/errors.hpp"
#include "kising/topology.hpp"

namespace kising {

/**
 * Dense statevector over 2^n basis states, little-endian qubit order
 * (qubit 0 is the least significant bit). Construction starts in |0...0>.
 * The qubit cap guards against accidental huge allocations; 22 qubits is
 * 64 MiB of amplitudes.
 */
class StateVector {
public:
    static constexpr int default_qubit_cap = 22;

    explicit StateVector(int n_qubits, int qubit_cap = default_qubit_cap) : n_(n_qubits) {
        if (n_qubits < 1) {
            throw validation_error("statevector needs at least one qubit");
        }
        if (n_qubits > qubit_cap) {
            const double mib = std::ldexp(16.0, n_qubits) / (1024.0 * 1024.0);
            char mem[32];
            std::snprintf(mem, sizeof mem, "%.4g", mib);
            throw resource_error("statevector with " + std::to_string(n_qubits) +
                                 " qubits needs " + mem + " MiB of amplitudes; cap is " +
                                 std::to_string(qubit_cap) + " qubits (raise the cap to override)");
        }
        amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
        amps_[0] = {1.0, 0.0};
    }

    [[nodiscard]] int n_qubits() const { return n_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
    [[nodiscard]] std::vector<std::complex<double>>& amplitudes() { return amps_; }

private:
    int n_;
    std::vector<std::complex<double>> amps_;
};

[[nodiscard]] inline double norm(const StateVector& psi) {
    double s = 0.0;
    for (const auto& a : psi.amplitudes()) s += std::norm(a);
    return std::sqrt(s);
}

/// exp(-i h X) on every qubit.
inline void apply_ux(StateVector& psi, double h) {
    const double c = std::cos(h);
    const std::complex<double> mis(0.0, -std::sin(h));
    auto& a = psi.amplitudes();
    for (int q = 0; q < psi.n_qubits(); ++q) {
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t base = 0; base < a.size(); base += 2 * bit) {
            for (std::size_t lo = base; lo < base + bit; ++lo) {
                const auto a0 = a[lo];
                const auto a1 = a[lo + bit];
                a[lo] = c * a0 + mis * a1;
                a[lo + bit] = c * a1 + mis * a0;
            }
        }
    }
}

/// exp(i J sum_edges Z_j Z_k): diagonal phases. The per-state edge sum is an
/// integer in [-M, M], so the exp() values are taken from a small table
/// instead of one transcendental call per (state, edge).
inline void apply_uzz(StateVector& psi, double J, const ConnectivityGraph& g) {
    if (g.n_qubits() != psi.n_qubits()) {
        throw validation_error("graph has " + std::to_string(g.n_qubits()) +
                               " qubits, statevector has " + std::to_string(psi.n_qubits()));
    }
    const int m = g.n_edges();
    std::vector<std::complex<double>> table(static_cast<std::size_t>(2 * m + 1));
    for (int s = -m; s <= m; ++s) {
        table[static_cast<std::size_t>(s + m)] = std::polar(1.0, J * s);
    }
    auto& a = psi.amplitudes();
    for (std::size_t b = 0; b < a.size(); ++b) {
        int sum = 0;
        for (const auto& [j, k] : g.edges()) {
            sum += (((b >> j) ^ (b >> k)) & 1u) ? -1 : 1;
        }
        a[b] *= table[static_cast<std::size_t>(sum + m)];
    }
}

[[nodiscard]] inline double expectation_z(const StateVector& psi, int qubit) {
    if (qubit < 0 || qubit >= psi.n_qubits()) {
        throw validation_error("qubit " + std::to_string(qubit) + " out of range");
    }
    const auto& a = psi.amplitudes();
    double z = 0.0;
    for (std::size_t b = 0; b < a.size(); ++b) {
        z += ((b >> qubit) & 1u) ? -std::norm(a[b]) : std::norm(a[b]);
    }
    return z;
}

[[nodiscard]] inline double expectation_x(const StateVector& psi, int qubit) {
    if (qubit < 0 || qubit >= psi.n_qubits()) {
        throw validation_error("qubit " + std::to_string(qubit) + " out of range");
    }
    const auto& a = psi.amplitudes();
    const std::size_t bit = std::size_t{1} << qubit;
    double x = 0.0;
    for (std::size_t base = 0; base < a.size(); base += 2 * bit) {
        for (std::size_t lo = base; lo < base + bit; ++lo) {
            x += 2.0 * (std::conj(a[lo]) * a[lo + bit]).real();
        }
    }
    return x;
}

[[nodiscard]] inline double expectation_y(const StateVector& psi, int qubit) {
    if (qubit < 0 || qubit >= psi.n_qubits()) {
        throw validation_error("qubit " + std::to_string(qubit) + " out of range");
    }
    const auto& a = psi.amplitudes();
    const std::size_t bit = std::size_t{1} << qubit;
    double y = 0.0;
    for (std::size_t base = 0; base < a.size(); base += 2 * bit) {
        for (std::size_t lo = base; lo < base + bit; ++lo) {
            y += 2.0 * (std::conj(a[lo]) * a[lo + bit]).imag();
        }
    }
    return y;
}

enum class Pauli { X, Y, Z };

/// <psi| P |psi> for a tensor-product Pauli string, e.g. {{0, Pauli::Z},
/// {3, Pauli::X}}. P is Hermitian so the value is real.
[[nodiscard]] inline double expectation_pauli_string(const StateVector& psi,
                                                     const std::map<int, Pauli>& ops) {
    const auto& a = psi.amplitudes();
    std::size_t flip_mask = 0;
    std::size_t y_mask = 0;
    std::size_t z_mask = 0;
    for (const auto& [q, p] : ops) {
        if (q < 0 || q >= psi.n_qubits()) {
            throw validation_error("pauli string qubit " + std::to_string(q) + " out of range");
        }
        switch (p) {
            case Pauli::X: flip_mask |= std::size_t{1} << q; break;
            case Pauli::Y: flip_mask |= std::size_t{1} << q; y_mask |= std::size_t{1} << q; break;
            case Pauli::Z: z_mask |= std::size_t{1} << q; break;
        }
    }
    // P|b> = phase * |b ^ flip_mask>. For Y on qubit q: Y|0> = i|1>,
    // Y|1> = -i|0>; for Z: (-1)^bit.
    const int n_y = static_cast<int>(std::popcount(y_mask));
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t b = 0; b < a.size(); ++b) {
        const std::size_t target = b ^ flip_mask;
        // i^{n_y} * (-1)^{popcount(b & y_mask)} from Y factors acting on |b>,
        // (-1)^{popcount(b & z_mask)} from Z factors.
        const int minus = static_cast<int>(std::popcount(b & y_mask) +
                                           std::popcount(b & z_mask)) & 1;
        std::complex<double> phase(minus ? -1.0 : 1.0, 0.0);
        switch (n_y & 3) {
            case 0: break;
            case 1: phase *= std::complex<double>(0.0, 1.0); break;
            case 2: phase *= -1.0; break;
            case 3: phase *= std::complex<double>(0.0, -1.0); break;
        }
        acc += std::conj(a[target]) * phase * a[b];
    }
    return acc.real();
}

/// Per-step observable record from the exact evolution.
struct StepObservables {
    int step = 0;
    std::vector<double> z;  // <Z_j> per qubit
    std::vector<double> x;
    std::vector<double> y;
    double mean_z = 0.0;
};

namespace detail {

inline StepObservables observe(const StateVector& psi, int step) {
    StepObservables rec;
    rec.step = step;
    const int n = psi.n_qubits();
    rec.z.reserve(n);
    rec.x.reserve(n);
    rec.y.reserve(n);
    double sum = 0.0;
    for (int q = 0; q < n; ++q) {
        const double z = expectation_z(psi, q);
        rec.z.push_back(z);
        rec.x.push_back(expectation_x(psi, q));
        rec.y.push_back(expectation_y(psi, q));
        sum += z;
    }
    rec.mean_z = sum / n;
    return rec;
}

}  // namespace detail

/// Exact Floquet evolution: from |0...0>, apply U_x then U_zz per step and
/// record per-qubit <X>, <Y>, <Z> and the mean magnetization after every
/// step (index 0 is the initial state).
[[nodiscard]] inline std::vector<StepObservables> evolve(
    const ConnectivityGraph& g, const DriveParams& params,
    int qubit_cap = StateVector::default_qubit_cap) {
    if (params.steps < 0) {
        throw validation_error("steps must be >= 0");
    }
    StateVector psi(g.n_qubits(), qubit_cap);

    // The integer edge sum per basis state does not change between steps;
    // precompute it together with the phase table.
    const int m = g.n_edges();
    std::vector<int> edge_sum(psi.dim(), 0);
    for (std::size_t b = 0; b < psi.dim(); ++b) {
        int sum = 0;
        for (const auto& [j, k] : g.edges()) {
            sum += (((b >> j) ^ (b >> k)) & 1u) ? -1 : 1;
        }
        edge_sum[b] = sum;
    }
    std::vector<std::complex<double>> table(static_cast<std::size_t>(2 * m + 1));
    for (int s = -m; s <= m; ++s) {
        table[static_cast<std::size_t>(s + m)] = std::polar(1.0, params.J * s);
    }

    std::vector<StepObservables> records;
    records.reserve(static_cast<std::size_t>(params.steps) + 1);
    records.push_back(detail::observe(psi, 0));
    for (int t = 1; t <= params.steps; ++t) {
        apply_ux(psi, params.h);
        auto& a = psi.amplitudes();
        for (std::size_t b = 0; b < a.size(); ++b) {
            a[b] *= table[static_cast<std::size_t>(edge_sum[b] + m)];
        }
        records.push_back(detail::observe(psi, t));
    }
    return records;
}

}  // namespace kising
