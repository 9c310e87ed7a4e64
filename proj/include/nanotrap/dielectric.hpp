#pragma once

#include <array>
#include <cmath>

#include "nanotrap/constants.hpp"
#include "nanotrap/errors.hpp"

namespace nanotrap {

// Three-term Sellmeier model of a transparent dielectric,
//   eps(lambda)/eps0 = 1 + sum_i B_i lambda^2 / (lambda^2 - C_i^2),
// with lambda in micrometers. On the imaginary frequency axis the same
// model reads eps(i xi)/eps0 = 1 + sum_i B_i w_i^2 / (w_i^2 + xi^2) with
// w_i = 2 pi c / C_i, so every term is positive and decays monotonically.
struct DielectricModel {
    std::array<double, 3> strength;
    std::array<double, 3> resonance_um;

    // relative dielectric at a real-axis wavelength (meters)
    double epsilon_rel(double lambda) const {
        if (lambda <= 0) throw invalid_input("wavelength must be positive");
        const double l2 = lambda * lambda * 1e12; // um^2
        double eps = 1.0;
        for (int i = 0; i < 3; ++i) {
            const double c2 = resonance_um[i] * resonance_um[i];
            if (std::abs(l2 - c2) < 1e-12 * c2)
                throw domain_error("wavelength at a Sellmeier pole");
            eps += strength[i] * l2 / (l2 - c2);
        }
        return eps;
    }

    // relative dielectric at imaginary frequency i*xi (xi in rad/s)
    double epsilon_rel_imag_axis(double xi) const {
        double eps = 1.0;
        for (int i = 0; i < 3; ++i) {
            const double w = 2.0 * pi * c_light / (resonance_um[i] * 1e-6);
            eps += strength[i] * w * w / (w * w + xi * xi);
        }
        return eps;
    }

    double refractive_index(double lambda) const {
        return std::sqrt(epsilon_rel(lambda));
    }
};

// Fused silica (Malitson coefficients), valid 0.2-10 um on the real axis.
inline DielectricModel silica() {
    return DielectricModel{{0.6961663, 0.4079426, 0.8974794},
                           {0.0684043, 0.1162414, 9.896161}};
}

} // namespace nanotrap
