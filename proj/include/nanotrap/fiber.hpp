#pragma once

#include <cmath>
#include <complex>

#include "nanotrap/bessel.hpp"
#include "nanotrap/constants.hpp"
#include "nanotrap/dielectric.hpp"
#include "nanotrap/errors.hpp"

// Fundamental HE11 mode of a vacuum-clad step-index fiber and the
// power-normalized evanescent intensity outside the core.

namespace nanotrap {

struct FiberSpec {
    double radius;             // core radius a, m
    DielectricModel core;      // supplies n1(lambda)
    double n_clad = 1.0;       // vacuum

    double n_core(double lambda) const { return core.refractive_index(lambda); }

    void validate() const {
        if (radius <= 0) throw invalid_input("fiber radius must be positive");
    }
};

inline constexpr double V_single_mode = 2.405; // first zero of J0

// Normalized frequency V = k a sqrt(n1^2 - n2^2).
inline double v_number(const FiberSpec& fiber, double lambda) {
    fiber.validate();
    if (lambda <= 0) throw invalid_input("wavelength must be positive");
    const double k = 2.0 * pi / lambda;
    const double n1 = fiber.n_core(lambda), n2 = fiber.n_clad;
    return k * fiber.radius * std::sqrt(n1 * n1 - n2 * n2);
}

// One guided HE11 mode at one wavelength. Immutable once built;
// normalize_power returns a copy with the field strength set.
struct ModeSolution {
    double lambda = 0;       // m
    double k = 0;            // free-space wavenumber, 1/m
    double n1 = 0, n2 = 1.0;
    double v = 0;            // V-number
    double beta = 0;         // propagation constant, 1/m
    double q = 0;            // outside decay parameter, 1/m
    double h = 0;            // inside transverse parameter, 1/m
    double s = 0;            // hybrid-mode structure coefficient
    double w_coef = 0;       // 2 q^2 / (beta^2 (1-s)^2)
    double f_coef = 0;       // (1+s)^2 / (1-s)^2
    double xi_coef = 0;      // 2 (1+s) / (1-s)
    double radius = 0;       // fiber radius, m
    double e_strength = 0;   // field strength E (V/m); 0 until normalized
    double power = 0;        // W

    double decay_length() const { return 1.0 / q; }
    double omega() const { return k * c_light; }
};

namespace detail {

// HE11-branch form of the exact eigenvalue equation for the l = 1 hybrid
// modes of a two-layer step-index fiber:
//   J0(u)/(u J1(u)) = -(n1^2+n2^2)/(2 n1^2) * Kb + 1/u^2 - R,
//   R = sqrt( ((n1^2-n2^2)/(2 n1^2) * Kb)^2 + (beta/(n1 k))^2 (1/u^2+1/w^2)^2 ),
// with u = h a, w = q a, Kb = K1'(w)/(w K1(w)).
inline double he11_dispersion(double u, double k, double a, double n1, double n2) {
    const double V2 = k * k * a * a * (n1 * n1 - n2 * n2);
    const double w2 = V2 - u * u;
    if (w2 <= 0) return std::nan("");
    const double w = std::sqrt(w2);
    const double beta2 = n1 * n1 * k * k - u * u / (a * a);
    const double Kb = bessel::K1p(w) / (w * bessel::K1(w));
    const double lhs = bessel::J0(u) / (u * bessel::J1(u));
    const double cminus = (n1 * n1 - n2 * n2) / (2.0 * n1 * n1);
    const double cplus = (n1 * n1 + n2 * n2) / (2.0 * n1 * n1);
    const double g = 1.0 / (u * u) + 1.0 / (w * w);
    const double R = std::sqrt(cminus * cminus * Kb * Kb +
                               beta2 / (n1 * n1 * k * k) * g * g);
    return lhs - (-cplus * Kb + 1.0 / (u * u) - R);
}

} // namespace detail

// Solve the HE11 eigenvalue problem. The returned mode has e_strength = 0;
// call normalize_power to attach a launched power.
inline ModeSolution solve_he11(const FiberSpec& fiber, double lambda) {
    const double V = v_number(fiber, lambda);
    if (V >= V_single_mode)
        throw multimode_error("V >= 2.405: fiber is multimode at this wavelength");

    const double a = fiber.radius;
    const double k = 2.0 * pi / lambda;
    const double n1 = fiber.n_core(lambda), n2 = fiber.n_clad;

    // bracket the fundamental root (smallest u) on u = h a in (0, V)
    const int nscan = 600;
    double ulo = 0, uhi = 0, flo = 0;
    double uprev = V * 1e-6, fprev = detail::he11_dispersion(uprev, k, a, n1, n2);
    for (int i = 1; i <= nscan; ++i) {
        const double ui = V * (1e-6 + (1.0 - 2e-6) * i / nscan);
        const double fi = detail::he11_dispersion(ui, k, a, n1, n2);
        if (std::isfinite(fprev) && std::isfinite(fi) && fprev * fi < 0) {
            ulo = uprev;
            uhi = ui;
            flo = fprev;
            break;
        }
        uprev = ui;
        fprev = fi;
    }
    if (uhi == 0) throw no_guided_mode_error("HE11 dispersion root not bracketed");

    for (int it = 0; it < 200 && (uhi - ulo) > 1e-16 * uhi; ++it) {
        const double um = 0.5 * (ulo + uhi);
        const double fm = detail::he11_dispersion(um, k, a, n1, n2);
        if (flo * fm <= 0) {
            uhi = um;
        } else {
            ulo = um;
            flo = fm;
        }
    }
    // secant polish
    double u = 0.5 * (ulo + uhi);
    {
        const double du = 1e-9 * u;
        const double f0 = detail::he11_dispersion(u, k, a, n1, n2);
        const double f1 = detail::he11_dispersion(u + du, k, a, n1, n2);
        const double step = f0 * du / (f1 - f0);
        if (std::isfinite(step) && std::abs(step) < (uhi - ulo) + du) u -= step;
    }

    ModeSolution m;
    m.lambda = lambda;
    m.k = k;
    m.n1 = n1;
    m.n2 = n2;
    m.v = V;
    m.radius = a;
    m.h = u / a;
    m.beta = std::sqrt(n1 * n1 * k * k - m.h * m.h);
    m.q = std::sqrt(m.beta * m.beta - n2 * n2 * k * k);
    const double w = m.q * a;
    m.s = (1.0 / (u * u) + 1.0 / (w * w)) /
          (bessel::J1p(u) / (u * bessel::J1(u)) +
           bessel::K1p(w) / (w * bessel::K1(w)));
    m.w_coef = 2.0 * m.q * m.q / (m.beta * m.beta * (1.0 - m.s) * (1.0 - m.s));
    m.f_coef = (1.0 + m.s) * (1.0 + m.s) / ((1.0 - m.s) * (1.0 - m.s));
    m.xi_coef = 2.0 * (1.0 + m.s) / (1.0 - m.s);
    return m;
}

// Residual of the dispersion relation at the mode's beta, relative scale.
inline double dispersion_residual(const ModeSolution& m) {
    const double lhs = bessel::J0(m.h * m.radius) /
                       (m.h * m.radius * bessel::J1(m.h * m.radius));
    const double d = detail::he11_dispersion(m.h * m.radius, m.k, m.radius, m.n1, m.n2);
    return std::abs(d) / std::max(std::abs(lhs), 1.0);
}

namespace detail {

// Time-averaged axial Poynting flux of the exact rotating HE11 mode with
// unit core amplitude, in watts. Closed form from the Bessel integrals
//   int_0^a Jn^2 r dr   = a^2/2 [Jn^2(u) - J_{n-1}(u) J_{n+1}(u)],
//   int_a^inf Kn^2 r dr = a^2/2 [K_{n-1}(w) K_{n+1}(w) - Kn^2(w)].
inline double unit_power(const ModeSolution& m) {
    const double a = m.radius, u = m.h * a, w = m.q * a;
    const double om = m.omega();
    const double s1 = m.beta * m.beta * m.s / (m.k * m.k * m.n1 * m.n1);
    const double s2 = m.beta * m.beta * m.s / (m.k * m.k * m.n2 * m.n2);
    const double J0 = bessel::J0(u), J1 = bessel::J1(u), J2 = bessel::J2(u),
                 J3 = bessel::J3(u);
    const double K0 = bessel::K0(w), K1 = bessel::K1(w), K2 = bessel::K2(w),
                 K3 = bessel::K3(w);
    const double Cc = J1 / K1; // clad amplitude for unit core amplitude

    const double p_in = pi * m.beta * om * epsilon0 * m.n1 * m.n1 * a * a /
                        (4.0 * m.h * m.h) *
                        ((1 - m.s) * (1 - s1) * (J0 * J0 + J1 * J1) +
                         (1 + m.s) * (1 + s1) * (J2 * J2 - J1 * J3));
    const double p_out = pi * m.beta * om * epsilon0 * m.n2 * m.n2 * a * a *
                         Cc * Cc / (4.0 * m.q * m.q) *
                         ((1 - m.s) * (1 - s2) * (K1 * K1 - K0 * K0) +
                          (1 + m.s) * (1 + s2) * (K1 * K3 - K2 * K2));
    return p_in + p_out;
}

} // namespace detail

// Set the field strength so the total axial flux (core + clad) equals P.
inline ModeSolution normalize_power(const ModeSolution& mode, double P) {
    if (P < 0) throw invalid_input("power must be >= 0");
    ModeSolution m = mode;
    const double amp2 = P / detail::unit_power(m); // core amplitude squared
    const double u = m.h * m.radius, w = m.q * m.radius;
    const double Cc2 = std::pow(bessel::J1(u) / bessel::K1(w), 2);
    m.e_strength = std::sqrt(amp2 * Cc2 * m.beta * m.beta * (1 - m.s) * (1 - m.s) /
                             (2.0 * m.q * m.q));
    m.power = P;
    return m;
}

// |E|^2 outside the core for circularly polarized input (cylindrically
// symmetric), V^2/m^2.
inline double intensity_circular(const ModeSolution& m, double r) {
    if (r < m.radius) throw domain_error("r inside the fiber core");
    const double K0 = bessel::K0(m.q * r), K1 = bessel::K1(m.q * r),
                 K2 = bessel::K2(m.q * r);
    return m.e_strength * m.e_strength *
           (K0 * K0 + m.w_coef * K1 * K1 + m.f_coef * K2 * K2);
}

// |E|^2 outside the core for quasi-linear polarization along x;
// phi measured from the polarization axis.
inline double intensity_linear(const ModeSolution& m, double r, double phi) {
    if (r < m.radius) throw domain_error("r inside the fiber core");
    const double K0 = bessel::K0(m.q * r), K1 = bessel::K1(m.q * r),
                 K2 = bessel::K2(m.q * r);
    return m.e_strength * m.e_strength *
           (K0 * K0 + m.w_coef * K1 * K1 + m.f_coef * K2 * K2 +
            (m.w_coef * K1 * K1 + m.xi_coef * K0 * K2) * std::cos(2.0 * phi));
}

// Complex cylindrical field components of the rotating HE11 mode
// (unit azimuthal/axial phase factor stripped), for flux checks.
struct FieldSample {
    std::complex<double> Er, Ephi, Ez, Hr, Hphi, Hz;
};

inline FieldSample mode_fields(const ModeSolution& m, double r) {
    using namespace std::complex_literals;
    const double a = m.radius, u = m.h * a, w = m.q * a;
    const double om = m.omega();
    const double amp2 = m.power / detail::unit_power(m);
    const double A = std::sqrt(amp2);
    FieldSample f;
    if (r < a) {
        const std::complex<double> B = 1i * m.beta * m.s * A / (om * mu0);
        const double hr = m.h * r;
        const double J0 = bessel::J0(hr), J1 = bessel::J1(hr), J2 = bessel::J2(hr);
        const double J1p = 0.5 * (J0 - J2);
        f.Ez = A * J1;
        f.Hz = B * J1;
        f.Er = -1i * m.beta / (m.h * m.h) *
               (A * m.h * J1p + 1i * om * mu0 / (m.beta * r) * B * J1);
        f.Ephi = -1i * m.beta / (m.h * m.h) *
                 (1i / r * A * J1 - om * mu0 * m.h / m.beta * B * J1p);
        f.Hr = -1i * m.beta / (m.h * m.h) *
               (B * m.h * J1p -
                1i * om * epsilon0 * m.n1 * m.n1 / (m.beta * r) * A * J1);
        f.Hphi = -1i * m.beta / (m.h * m.h) *
                 (1i / r * B * J1 + om * epsilon0 * m.n1 * m.n1 * m.h / m.beta * A * J1p);
    } else {
        const double C = A * bessel::J1(u) / bessel::K1(w);
        const std::complex<double> D = 1i * m.beta * m.s * C / (om * mu0);
        const double qr = m.q * r;
        const double K0 = bessel::K0(qr), K1 = bessel::K1(qr), K2 = bessel::K2(qr);
        const double K1p = -0.5 * (K0 + K2);
        f.Ez = C * K1;
        f.Hz = D * K1;
        f.Er = 1i * m.beta / (m.q * m.q) *
               (C * m.q * K1p + 1i * om * mu0 / (m.beta * r) * D * K1);
        f.Ephi = 1i * m.beta / (m.q * m.q) *
                 (1i / r * C * K1 - om * mu0 * m.q / m.beta * D * K1p);
        f.Hr = 1i * m.beta / (m.q * m.q) *
               (D * m.q * K1p -
                1i * om * epsilon0 * m.n2 * m.n2 / (m.beta * r) * C * K1);
        f.Hphi = 1i * m.beta / (m.q * m.q) *
                 (1i / r * D * K1 + om * epsilon0 * m.n2 * m.n2 * m.q / m.beta * C * K1p);
    }
    return f;
}

} // namespace nanotrap
