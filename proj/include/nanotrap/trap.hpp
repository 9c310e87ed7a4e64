#pragma once

#include <cmath>
#include <memory>

#include "nanotrap/atom.hpp"
#include "nanotrap/constants.hpp"
#include "nanotrap/errors.hpp"
#include "nanotrap/fiber.hpp"
#include "nanotrap/vdw.hpp"

// Net two-color optical potential (circular and quasi-linear input
// polarization), the total potential with the van der Waals term, and the
// closed-form design conditions of the approximate (w = f = 0) model.

namespace nanotrap {

enum class Polarization { circular, linear_x };

// Immutable bundle of everything the potential evaluations need: the two
// solved, power-normalized modes, the polarizabilities at both colors, and
// a van der Waals cache spanning the radial evaluation range.
struct TrapConfiguration {
    FiberSpec fiber;
    AtomModel atom;
    ModeSolution red;   // mode 1, alpha > 0
    ModeSolution blue;  // mode 2, alpha < 0
    Polarization scheme = Polarization::circular;
    double alpha_red = 0, alpha_blue = 0;   // real polarizabilities, SI
    double g_red = 0, g_blue = 0;           // coupling parameters G_i, J
    std::shared_ptr<const VdwCache> vdw;    // empty => vdW omitted

    // diagnostic detunings from the atom's first (dominant) line
    double detuning_red() const {
        return red.omega() - atom.lines.front().omega();
    }
    double detuning_blue() const {
        return blue.omega() - atom.lines.front().omega();
    }
};

inline TrapConfiguration make_configuration(const FiberSpec& fiber,
                                            const AtomModel& atom,
                                            double lambda_red, double p_red,
                                            double lambda_blue, double p_blue,
                                            Polarization scheme,
                                            bool with_vdw = true,
                                            double r_span_factor = 6.0) {
    if (lambda_red <= lambda_blue)
        throw invalid_input("red wavelength must exceed blue wavelength");
    TrapConfiguration cfg;
    cfg.fiber = fiber;
    cfg.atom = atom;
    cfg.scheme = scheme;
    cfg.red = normalize_power(solve_he11(fiber, lambda_red), p_red);
    cfg.blue = normalize_power(solve_he11(fiber, lambda_blue), p_blue);
    cfg.alpha_red = polarizability_real(atom, cfg.red.omega());
    cfg.alpha_blue = polarizability_real(atom, cfg.blue.omega());
    if (cfg.alpha_red <= 0)
        throw invalid_input("mode 1 is not red-detuned (alpha <= 0)");
    if (cfg.alpha_blue >= 0)
        throw invalid_input("mode 2 is not blue-detuned (alpha >= 0)");
    cfg.g_red = cfg.alpha_red * cfg.red.e_strength * cfg.red.e_strength / 4.0;
    cfg.g_blue = -cfg.alpha_blue * cfg.blue.e_strength * cfg.blue.e_strength / 4.0;
    if (with_vdw) {
        const double d_max = r_span_factor * cfg.red.decay_length() + fiber.radius;
        // below ~1 nm the cache extrapolates with the flat-surface -C3/D^3 law
        cfg.vdw = std::make_shared<VdwCache>(atom, fiber, 1e-9, d_max);
    }
    return cfg;
}

struct PotentialSample {
    double r;          // m
    double phi;        // rad (ignored for circular)
    double optical;    // J
    double vdw;        // J
    double total;      // J
};

// U = -alpha |E|^2 / 4 (induced dipole 1/2, time average 1/2).
inline double optical_potential(double alpha, double intensity) {
    if (intensity < 0) throw invalid_input("intensity must be >= 0");
    return -0.25 * alpha * intensity;
}

// Net optical potential, circular scheme (phi-independent).
inline double net_optical_circular(const TrapConfiguration& cfg, double r) {
    return optical_potential(cfg.alpha_red, intensity_circular(cfg.red, r)) +
           optical_potential(cfg.alpha_blue, intensity_circular(cfg.blue, r));
}

// Net optical potential, quasi-linear scheme.
inline double net_optical_linear(const TrapConfiguration& cfg, double r, double phi) {
    return optical_potential(cfg.alpha_red, intensity_linear(cfg.red, r, phi)) +
           optical_potential(cfg.alpha_blue, intensity_linear(cfg.blue, r, phi));
}

inline double net_optical(const TrapConfiguration& cfg, double r, double phi) {
    return cfg.scheme == Polarization::circular ? net_optical_circular(cfg, r)
                                                : net_optical_linear(cfg, r, phi);
}

inline PotentialSample total_potential(const TrapConfiguration& cfg, double r,
                                       double phi = 0.0) {
    if (r <= cfg.fiber.radius) throw domain_error("r must be > a");
    PotentialSample p;
    p.r = r;
    p.phi = phi;
    p.optical = net_optical(cfg, r, phi);
    p.vdw = cfg.vdw ? (*cfg.vdw)(r) : 0.0;
    p.total = p.optical + p.vdw;
    return p;
}

// --- analytic design surface (approximate w = f = 0 model) ---------------

struct TrapConditions {
    double ratio;           // G2/G1
    double existence_bound; // Eq-(10) rhs: minimum ratio for an outside minimum
    double surface_bound;   // Eq-(11) rhs: minimum ratio for U(a) >= 0
    bool has_minimum() const { return ratio > existence_bound; }
    bool surface_safe() const { return ratio >= surface_bound; }
};

inline TrapConditions trap_condition_ratio(const TrapConfiguration& cfg) {
    const double a = cfg.fiber.radius;
    const double q1 = cfg.red.q, q2 = cfg.blue.q;
    TrapConditions c;
    c.ratio = cfg.g_blue / cfg.g_red;
    c.existence_bound = q1 * bessel::K0(q1 * a) * bessel::K1(q1 * a) /
                        (q2 * bessel::K0(q2 * a) * bessel::K1(q2 * a));
    c.surface_bound = std::pow(bessel::K0(q1 * a) / bessel::K0(q2 * a), 2);
    return c;
}

// F(r) = K0(q1 r) K1(q1 r) / [K0(q2 r) K1(q2 r)]; strictly increasing for
// q1 < q2. The approximate-model minimum solves F(r_m) = A.
inline double analytic_f(double r, double q1, double q2) {
    return bessel::K0(q1 * r) * bessel::K1(q1 * r) /
           (bessel::K0(q2 * r) * bessel::K1(q2 * r));
}

inline double analytic_a(const TrapConfiguration& cfg) {
    return cfg.blue.q * cfg.g_blue / (cfg.red.q * cfg.g_red);
}

// Approximate-model minimum location from F(r_m) = A, by bisection.
// Analysis aid only; never a substitute for minimizing the full potential.
inline double approx_minimum_radius(const TrapConfiguration& cfg) {
    const double a = cfg.fiber.radius;
    const double q1 = cfg.red.q, q2 = cfg.blue.q;
    const double A = analytic_a(cfg);
    if (A <= analytic_f(a, q1, q2))
        throw no_trap_error("approximate model: no minimum outside the fiber");
    double lo = a, hi = a;
    while (analytic_f(hi, q1, q2) < A) {
        hi *= 1.5;
        if (hi > 1e3 * a) throw no_trap_error("approximate model: F never reaches A");
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (analytic_f(mid, q1, q2) < A ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Blue power that zeroes the approximate-model potential at the surface
// (condition (11) as an equality: G2/G1 = K0^2(q1 a)/K0^2(q2 a)).
inline double optimize_blue_power(const TrapConfiguration& cfg) {
    const double target = trap_condition_ratio(cfg).surface_bound * cfg.g_red;
    // G2 is linear in P2
    return cfg.blue.power * target / cfg.g_blue;
}

} // namespace nanotrap
