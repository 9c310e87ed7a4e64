#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "nanotrap/constants.hpp"
#include "nanotrap/errors.hpp"
#include "nanotrap/trap.hpp"

// Trap characterization: minimum location, depth, scattering and coherence,
// recoil-heating lifetime, harmonic frequencies, ground-state localization.

namespace nanotrap {

struct TrapMinimum {
    double r;      // m
    double phi;    // rad (0 for circular)
    double value;  // U_tot at the minimum, J
};

namespace detail {

// Golden-section refinement of a bracketed 1D minimum.
inline double golden_min(const std::function<double(double)>& f, double lo,
                         double hi, double tol) {
    const double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        }
    }
    return 0.5 * (lo + hi);
}

// Deepest interior local minimum of f on a geometric grid of [rlo, rhi].
// Returns false when no interior minimum exists (the potential slides
// monotonically into the surface or to the far field).
inline bool radial_local_min(const std::function<double(double)>& f, double rlo,
                             double rhi, int n, double& r_min, double& f_min) {
    std::vector<double> rs(n), fs(n);
    const double ratio = std::pow(rhi / rlo, 1.0 / (n - 1));
    for (int i = 0; i < n; ++i) {
        rs[i] = rlo * std::pow(ratio, i);
        fs[i] = f(rs[i]);
    }
    int best = -1;
    for (int i = 1; i + 1 < n; ++i)
        if (fs[i] < fs[i - 1] && fs[i] < fs[i + 1] && (best < 0 || fs[i] < fs[best]))
            best = i;
    if (best < 0) return false;
    r_min = golden_min(f, rs[best - 1], rs[best + 1], 1e-13 * rs[best]);
    f_min = f(r_min);
    return true;
}

} // namespace detail

// Locate the trap minimum of the total potential. Circular: 1D in r.
// Linear: coarse sweep over phi in [0, pi) at 1 degree, then local golden
// refinement in phi; the phi = 0 representative of the symmetric pair is
// returned when the landscape is mirror-symmetric about the x axis.
inline TrapMinimum find_minimum(const TrapConfiguration& cfg, int n_grid = 2000) {
    const double a = cfg.fiber.radius;
    const double rlo = a * (1.0 + 1e-4);
    const double rhi = a + 6.0 * cfg.red.decay_length();

    auto radial_at = [&](double phi, double& r, double& v) {
        return detail::radial_local_min(
            [&](double rr) { return total_potential(cfg, rr, phi).total; }, rlo,
            rhi, n_grid, r, v);
    };

    TrapMinimum m{0, 0, 0};
    if (cfg.scheme == Polarization::circular) {
        if (!radial_at(0.0, m.r, m.value))
            throw no_trap_error("no interior minimum of the total potential");
        m.phi = 0.0;
        return m;
    }

    // linear scheme: 1-degree outer scan
    const int nphi = 180;
    double best_phi = 0, best_v = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nphi; ++i) {
        const double phi = pi * i / nphi;
        double r, v;
        if (radial_at(phi, r, v) && v < best_v) {
            best_v = v;
            best_phi = phi;
        }
    }
    if (!std::isfinite(best_v))
        throw no_trap_error("no interior minimum of the total potential");
    auto value_at_phi = [&](double phi) {
        double r, v;
        if (!radial_at(phi, r, v)) return std::numeric_limits<double>::infinity();
        return v;
    };
    const double dphi = pi / nphi;
    double phi_m = detail::golden_min(value_at_phi, best_phi - dphi,
                                      best_phi + dphi, 1e-10);
    // snap the symmetric pair's representative to exactly phi = 0 / pi
    if (std::abs(phi_m) < 2e-3 || std::abs(phi_m - pi) < 2e-3 ||
        std::abs(phi_m + pi) < 2e-3)
        phi_m = (std::abs(phi_m) < pi / 2) ? 0.0 : pi;
    if (!radial_at(phi_m, m.r, m.value))
        throw no_trap_error("no interior minimum of the total potential");
    m.phi = phi_m;
    return m;
}

struct ScatteringRates {
    double gamma_red;   // 1/s
    double gamma_blue;  // 1/s
    double gamma_total; // 1/s
    double tau_coh;     // s; +inf when both rates vanish
};

// Spontaneous scattering at the trap minimum: Gamma_i = kappa_i |E_i|^2 / 4 hbar.
inline ScatteringRates scattering_rates(const TrapConfiguration& cfg, double r_m,
                                        double phi_m = 0.0) {
    const bool lin = cfg.scheme == Polarization::linear_x;
    const double i_red = lin ? intensity_linear(cfg.red, r_m, phi_m)
                             : intensity_circular(cfg.red, r_m);
    const double i_blue = lin ? intensity_linear(cfg.blue, r_m, phi_m)
                              : intensity_circular(cfg.blue, r_m);
    ScatteringRates s;
    s.gamma_red = polarizability_imag(cfg.atom, cfg.red.omega()) * i_red / (4.0 * hbar);
    s.gamma_blue =
        polarizability_imag(cfg.atom, cfg.blue.omega()) * i_blue / (4.0 * hbar);
    s.gamma_total = s.gamma_red + s.gamma_blue;
    s.tau_coh = s.gamma_total > 0 ? 1.0 / s.gamma_total
                                  : std::numeric_limits<double>::infinity();
    return s;
}

// Recoil-heating lifetime tau = U_D / (2 sum_i theta_i Gamma_i).
inline double trap_lifetime(const TrapConfiguration& cfg, double depth,
                            const ScatteringRates& rates) {
    if (depth <= 0) throw no_trap_error("trap_lifetime: non-positive depth");
    const double th_red = recoil_energy(cfg.red.lambda, cfg.atom.mass);
    const double th_blue = recoil_energy(cfg.blue.lambda, cfg.atom.mass);
    return depth /
           (2.0 * (th_red * rates.gamma_red + th_blue * rates.gamma_blue));
}

struct HarmonicFrequencies {
    double omega_r;   // rad/s
    double omega_phi; // rad/s; 0 for the circular scheme (flat direction)
};

// Curvatures at the minimum by 5-point central differences; the azimuthal
// frequency uses the arc coordinate s = r_m phi.
inline HarmonicFrequencies harmonic_frequencies(const TrapConfiguration& cfg,
                                                double r_m, double phi_m = 0.0,
                                                double rel_step = 1e-4) {
    auto u = [&](double r, double phi) { return total_potential(cfg, r, phi).total; };
    const double h = r_m * rel_step;
    const double d2r = (-u(r_m - 2 * h, phi_m) + 16 * u(r_m - h, phi_m) -
                        30 * u(r_m, phi_m) + 16 * u(r_m + h, phi_m) -
                        u(r_m + 2 * h, phi_m)) /
                       (12.0 * h * h);
    if (d2r <= 0) throw saddle_point_error("non-positive radial curvature");
    HarmonicFrequencies f;
    f.omega_r = std::sqrt(d2r / cfg.atom.mass);
    if (cfg.scheme == Polarization::circular) {
        f.omega_phi = 0.0;
        return f;
    }
    const double dp = rel_step;
    const double d2p = (-u(r_m, phi_m - 2 * dp) + 16 * u(r_m, phi_m - dp) -
                        30 * u(r_m, phi_m) + 16 * u(r_m, phi_m + dp) -
                        u(r_m, phi_m + 2 * dp)) /
                       (12.0 * dp * dp * r_m * r_m);
    if (d2p <= 0) throw saddle_point_error("non-positive azimuthal curvature");
    f.omega_phi = std::sqrt(d2p / cfg.atom.mass);
    return f;
}

// rms ground-state size of a harmonic oscillator, sqrt(hbar / 2 M omega).
inline double ground_state_size(double omega, double mass) {
    if (omega <= 0) throw invalid_input("ground_state_size: omega must be > 0");
    return std::sqrt(hbar / (2.0 * mass * omega));
}

// Height of the repulsive wall between the surface and the minimum,
// max_{a<r<r_m} U_tot - U_m.
inline double barrier_height(const TrapConfiguration& cfg, double r_m,
                             double phi_m, double u_m) {
    const double a = cfg.fiber.radius;
    const double rlo = a * (1.0 + 1e-4);
    double best = -std::numeric_limits<double>::infinity();
    double r_best = rlo;
    const int n = 1200;
    for (int i = 0; i < n; ++i) {
        const double r = rlo * std::pow(r_m / rlo, (double)i / (n - 1));
        const double v = total_potential(cfg, r, phi_m).total;
        if (v > best) {
            best = v;
            r_best = r;
        }
    }
    const double lo = std::max(rlo, r_best * (1 - 2e-3));
    const double r_ref = detail::golden_min(
        [&](double r) { return -total_potential(cfg, r, phi_m).total; }, lo,
        std::min(r_m, r_best * (1 + 2e-3)), 1e-13 * r_best);
    return total_potential(cfg, r_ref, phi_m).total - u_m;
}

struct TrapReport {
    std::string scheme;
    double r_m = 0;           // m
    double phi_m = 0;         // rad
    double u_min = 0;         // J
    double depth = 0;         // J
    double barrier = 0;       // J
    double gamma_red = 0;     // 1/s
    double gamma_blue = 0;    // 1/s
    double gamma_total = 0;   // 1/s
    double tau_coh = 0;       // s
    double tau_trap = 0;      // s
    double freq_r = 0;        // omega_r / 2 pi, Hz
    double freq_phi = 0;      // omega_phi / 2 pi, Hz (0 for circular)
    double loc_r = 0;         // m
    double loc_phi = 0;       // m (0 for circular)
    double recoil_red = 0;    // J
    double recoil_blue = 0;   // J
};

inline TrapReport analyze(const TrapConfiguration& cfg) {
    TrapReport rep;
    rep.scheme = cfg.scheme == Polarization::circular ? "circular" : "linear";
    const TrapMinimum m = find_minimum(cfg);
    rep.r_m = m.r;
    rep.phi_m = m.phi;
    rep.u_min = m.value;
    rep.depth = -m.value;
    if (rep.depth <= 0) throw no_trap_error("minimum is not below zero");
    rep.barrier = barrier_height(cfg, m.r, m.phi, m.value);
    const ScatteringRates s = scattering_rates(cfg, m.r, m.phi);
    rep.gamma_red = s.gamma_red;
    rep.gamma_blue = s.gamma_blue;
    rep.gamma_total = s.gamma_total;
    rep.tau_coh = s.tau_coh;
    rep.tau_trap = trap_lifetime(cfg, rep.depth, s);
    const HarmonicFrequencies f = harmonic_frequencies(cfg, m.r, m.phi);
    rep.freq_r = f.omega_r / (2.0 * pi);
    rep.loc_r = ground_state_size(f.omega_r, cfg.atom.mass);
    if (f.omega_phi > 0) {
        rep.freq_phi = f.omega_phi / (2.0 * pi);
        rep.loc_phi = ground_state_size(f.omega_phi, cfg.atom.mass);
    }
    rep.recoil_red = recoil_energy(cfg.red.lambda, cfg.atom.mass);
    rep.recoil_blue = recoil_energy(cfg.blue.lambda, cfg.atom.mass);
    return rep;
}

} // namespace nanotrap
