#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "kising/errors.hpp"

namespace kising {

inline constexpr double pi = 3.14159265358979323846;

/// Single-qubit mixed state as the Bloch vector (<X>, <Y>, <Z>).
/// Physical states satisfy x^2 + y^2 + z^2 <= 1.
struct BlochState {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;
};

/// Circuit angles as half-angles (theta_J = 2J, theta_h = 2h) plus step count.
struct DriveParams {
    double J = pi / 4;  // Ising half-angle
    double h = 0.0;     // transverse-field half-angle
    int steps = 0;

    [[nodiscard]] double theta_j() const { return 2.0 * J; }
    [[nodiscard]] double theta_h() const { return 2.0 * h; }

    static DriveParams from_full_angles(double theta_j, double theta_h, int steps) {
        return DriveParams{theta_j / 2.0, theta_h / 2.0, steps};
    }
};

[[nodiscard]] inline double bloch_norm(const BlochState& s) {
    return std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z);
}

[[nodiscard]] inline double coherence(const BlochState& s) {
    return std::hypot(s.x, s.y);
}

/// exp(-i h X) applied to the state: Bloch rotation about +x by 2h,
/// so |0> moves toward -Y for small positive h.
[[nodiscard]] inline BlochState rotate_x(const BlochState& s, double h) {
    const double c = std::cos(2.0 * h);
    const double sn = std::sin(2.0 * h);
    return {s.x, s.y * c - s.z * sn, s.z * c + s.y * sn};
}

/// exp(+i t Z) applied to the state (t is the half-angle, e.g. J*xi*z).
/// Heisenberg images: X' = X cos 2t + Y sin 2t, Y' = Y cos 2t - X sin 2t.
[[nodiscard]] inline BlochState rotate_z(const BlochState& s, double half_angle) {
    const double c = std::cos(2.0 * half_angle);
    const double sn = std::sin(2.0 * half_angle);
    return {s.x * c + s.y * sn, s.y * c - s.x * sn, s.z};
}

/// Kraus dephasing channel rho' = (1-p) rho + p Z rho Z:
/// coherences shrink by 1-2p, z is preserved.
[[nodiscard]] inline BlochState dephase(const BlochState& s, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw validation_error("dephasing probability " + std::to_string(p) +
                               " outside [0, 1]");
    }
    const double f = 1.0 - 2.0 * p;
    return {f * s.x, f * s.y, s.z};
}

/// p = (1 - exp(-2 J^2 var)) / 2 for a Gaussian rotation angle 2J*dZ with
/// Var[dZ] = var. Always in [0, 1/2).
[[nodiscard]] inline double dephasing_probability(double variance, double J) {
    if (!(variance >= 0.0)) {
        throw validation_error("variance " + std::to_string(variance) + " must be >= 0");
    }
    return 0.5 * (1.0 - std::exp(-2.0 * J * J * variance));
}

/// Density matrix (1 + x X + y Y + z Z) / 2, row-major. Used by tests to
/// check positivity by reconstruction.
[[nodiscard]] inline std::array<std::complex<double>, 4> density_matrix(const BlochState& s) {
    using C = std::complex<double>;
    return {C(0.5 * (1.0 + s.z), 0.0), C(0.5 * s.x, -0.5 * s.y),
            C(0.5 * s.x, 0.5 * s.y), C(0.5 * (1.0 - s.z), 0.0)};
}

}  // namespace kising
