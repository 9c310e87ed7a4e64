#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nanotrap/constants.hpp"
#include "nanotrap/errors.hpp"

namespace nanotrap {

// One spectral line of the ground-state atom.
struct SpectralLine {
    double wavelength;  // m
    double gamma;       // emission transition probability, 1/s
    int g_upper;        // statistical weight of the excited level

    double omega() const { return 2.0 * pi * c_light / wavelength; }
};

struct AtomModel {
    std::string name;
    double mass;       // kg
    int g_ground;      // statistical weight of the ground-state manifold
    std::vector<SpectralLine> lines;

    void validate() const {
        if (mass <= 0) throw invalid_input("atom mass must be positive");
        if (g_ground < 1) throw invalid_input("g_ground must be >= 1");
        if (lines.empty()) throw invalid_input("atom needs at least one line");
        for (const auto& l : lines)
            if (l.wavelength <= 0 || l.gamma <= 0 || l.g_upper < 1)
                throw invalid_input("bad spectral line");
    }
};

// Cesium with the four dominant lines (D2, D1 and the 7p doublet).
inline AtomModel cesium() {
    AtomModel a;
    a.name = "cesium";
    a.mass = 2.20695e-25;
    a.g_ground = 2;
    a.lines = {{852.113e-9, 3.276e7, 4},
               {894.347e-9, 2.87e7, 2},
               {455.528e-9, 1.88e6, 4},
               {459.317e-9, 8e5, 2}};
    return a;
}

// Plain-text atom data file:
//   mass_kg  <value>
//   g_ground <value>
//   <wavelength_nm> <gamma_per_s> <g_upper>     (one line per transition)
// '#' starts a comment.
inline AtomModel load_atom(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open atom data file: " + path);
    AtomModel a;
    a.name = path;
    a.mass = 0;
    a.g_ground = 0;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "mass_kg") {
            ss >> a.mass;
        } else if (first == "g_ground") {
            ss >> a.g_ground;
        } else if (first == "name") {
            ss >> a.name;
        } else {
            double wl_nm = std::stod(first), gamma;
            int g;
            if (!(ss >> gamma >> g)) throw invalid_input("bad transition record: " + line);
            a.lines.push_back({wl_nm * 1e-9, gamma, g});
        }
    }
    a.validate();
    return a;
}

// Real part of the ground-state polarizability (SI, C m^2/V).
inline double polarizability_real(const AtomModel& atom, double omega) {
    if (omega < 0) throw invalid_input("omega must be >= 0");
    double sum = 0.0;
    for (const auto& l : atom.lines) {
        const double wja = l.omega();
        const double num = l.gamma * (1.0 - omega * omega / (wja * wja));
        const double d = wja * wja - omega * omega;
        const double den = d * d + l.gamma * l.gamma * omega * omega;
        sum += (double)l.g_upper / atom.g_ground * num / den;
    }
    return 2.0 * pi * epsilon0 * c_light * c_light * c_light * sum;
}

// Imaginary part; drives spontaneous scattering.
inline double polarizability_imag(const AtomModel& atom, double omega) {
    if (omega <= 0) throw invalid_input("omega must be > 0");
    double sum = 0.0;
    for (const auto& l : atom.lines) {
        const double wja = l.omega();
        const double num = l.gamma * l.gamma * omega / (wja * wja);
        const double d = wja * wja - omega * omega;
        const double den = d * d + l.gamma * l.gamma * omega * omega;
        sum += (double)l.g_upper / atom.g_ground * num / den;
    }
    return 2.0 * pi * epsilon0 * c_light * c_light * c_light * sum;
}

// Polarizability on the imaginary frequency axis (far-off-resonance form,
// omega^2 -> -xi^2 with the damping dropped); positive and monotonically
// decreasing in xi.
inline double polarizability_imag_axis(const AtomModel& atom, double xi) {
    if (xi < 0) throw invalid_input("xi must be >= 0");
    double sum = 0.0;
    for (const auto& l : atom.lines) {
        const double wja = l.omega();
        sum += (double)l.g_upper * l.gamma /
               (atom.g_ground * wja * wja * (wja * wja + xi * xi));
    }
    return 2.0 * pi * epsilon0 * c_light * c_light * c_light * sum;
}

// Recoil energy (hbar k)^2 / 2M of a single scattered photon, in joules.
inline double recoil_energy(double lambda, double mass) {
    if (lambda <= 0 || mass <= 0) throw invalid_input("recoil_energy: bad input");
    const double k = 2.0 * pi / lambda;
    return hbar * hbar * k * k / (2.0 * mass);
}

} // namespace nanotrap
