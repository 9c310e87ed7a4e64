#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "nanotrap/fiber.hpp"
#include "nanotrap/quadrature.hpp"

using namespace nanotrap;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const FiberSpec fiber{0.2e-6, silica()};
}

// Eigenvalues frozen from an independent mpmath solve of the exact
// two-layer dispersion relation.

TEST_CASE("HE11 eigenvalues at the two trap wavelengths") {
    const auto red = solve_he11(fiber, 1.06e-6);
    CHECK_THAT(red.q * red.radius, WithinRel(0.243752908109037, 1e-10));
    CHECK_THAT(red.h * red.radius, WithinRel(1.22014702600756, 1e-10));
    CHECK_THAT(red.beta, WithinRel(6051531.88296682, 1e-10));
    CHECK_THAT(red.s, WithinRel(-0.967370012916864, 1e-9));

    const auto blue = solve_he11(fiber, 700e-9);
    CHECK_THAT(blue.q * blue.radius, WithinRel(0.968649493925903, 1e-10));
    CHECK_THAT(blue.h * blue.radius, WithinRel(1.63227722240494, 1e-10));
    CHECK_THAT(blue.beta, WithinRel(10199276.7020333, 1e-10));
    CHECK_THAT(blue.s, WithinRel(-0.85287171239819, 1e-9));
}

TEST_CASE("transverse parameters close the dispersion triangle") {
    for (double lam : {1.06e-6, 700e-9, 0.9e-6}) {
        const auto m = solve_he11(fiber, lam);
        const double lhs = m.q * m.q + m.h * m.h;
        const double rhs = m.k * m.k * (m.n1 * m.n1 - m.n2 * m.n2);
        CHECK_THAT(lhs, WithinRel(rhs, 1e-12));
        CHECK(dispersion_residual(m) < 1e-10);
        CHECK(m.beta > m.n2 * m.k);
        CHECK(m.beta < m.n1 * m.k);
    }
}

TEST_CASE("evanescent decay parameter grows toward shorter wavelengths") {
    double prev = 0.0;
    for (double lam : {1.06e-6, 0.95e-6, 0.85e-6, 0.75e-6, 0.7e-6}) {
        const double q = solve_he11(fiber, lam).q;
        CHECK(q > prev);
        prev = q;
    }
}

TEST_CASE("power normalization against a numerical Poynting integral") {
    // Independent oracle: quadrature of the axial Poynting flux
    // S_z = Re(E_r H_phi^* - E_phi H_r^*) / 2 over the cross-section,
    // versus the closed-form normalization.
    for (double lam : {1.06e-6, 700e-9}) {
        const double P = 0.030;
        const auto m = normalize_power(solve_he11(fiber, lam), P);
        auto sz = [&](double r) {
            const FieldSample f = mode_fields(m, r);
            return 0.5 * std::real(f.Er * std::conj(f.Hphi) -
                                   f.Ephi * std::conj(f.Hr));
        };
        const auto& gl = GaussLegendre::cached(120);
        double flux = 0.0;
        const double a = m.radius;
        for (int i = 0; i < (int)gl.x.size(); ++i) { // core
            const double r = a * gl.x[i];
            flux += gl.w[i] * a * 2.0 * pi * r * sz(r);
        }
        double lo = a; // cladding, geometric panels out to ~40 decay lengths
        const double rmax = a + 40.0 / m.q;
        for (int p = 0; p < 24; ++p) {
            const double hi = lo + (rmax - a) * std::pow(2.0, p - 23);
            for (int i = 0; i < (int)gl.x.size(); ++i) {
                const double r = lo + (hi - lo) * gl.x[i];
                flux += gl.w[i] * (hi - lo) * 2.0 * pi * r * sz(r);
            }
            lo = hi;
        }
        CHECK_THAT(flux, WithinRel(P, 1e-3));
    }
}

TEST_CASE("normalization scales and is idempotent") {
    const auto m = solve_he11(fiber, 1.06e-6);
    const auto p1 = normalize_power(m, 0.030);
    const auto p2 = normalize_power(m, 0.060);
    CHECK_THAT(p2.e_strength * p2.e_strength,
               WithinRel(2.0 * p1.e_strength * p1.e_strength, 1e-12));
    const auto again = normalize_power(p1, 0.030);
    CHECK_THAT(again.e_strength, WithinRel(p1.e_strength, 1e-13));
    CHECK(normalize_power(m, 0.0).e_strength == 0.0);
}

TEST_CASE("azimuthal average of the linear intensity is the circular one") {
    const auto m = normalize_power(solve_he11(fiber, 1.06e-6), 0.030);
    for (double r : {0.25e-6, 0.37e-6, 0.6e-6}) {
        // cos(2 phi) averages out exactly on a 4-point grid
        const double avg = (intensity_linear(m, r, 0.0) +
                            intensity_linear(m, r, pi / 4) +
                            intensity_linear(m, r, pi / 2) +
                            intensity_linear(m, r, 3 * pi / 4)) /
                           4.0;
        CHECK_THAT(avg, WithinRel(intensity_circular(m, r), 1e-12));
        CHECK(intensity_linear(m, r, 0.0) > intensity_linear(m, r, pi / 2));
    }
}

TEST_CASE("tangential fields are continuous across the core boundary") {
    const auto m = normalize_power(solve_he11(fiber, 1.06e-6), 0.030);
    const double a = m.radius;
    const FieldSample in = mode_fields(m, a * (1.0 - 1e-9));
    const FieldSample out = mode_fields(m, a * (1.0 + 1e-9));
    CHECK_THAT(std::abs(in.Ez), WithinRel(std::abs(out.Ez), 1e-6));
    CHECK_THAT(std::abs(in.Ephi), WithinRel(std::abs(out.Ephi), 1e-6));
    CHECK_THAT(std::abs(in.Hz), WithinRel(std::abs(out.Hz), 1e-6));
    CHECK_THAT(std::abs(in.Hphi), WithinRel(std::abs(out.Hphi), 1e-6));
    // normal displacement: n1^2 Er(in) = n2^2 Er(out)
    CHECK_THAT(m.n1 * m.n1 * std::abs(in.Er),
               WithinRel(m.n2 * m.n2 * std::abs(out.Er), 1e-6));
}

TEST_CASE("multimode and invalid inputs are rejected") {
    CHECK_THROWS_AS(solve_he11(FiberSpec{0.4e-6, silica()}, 1.06e-6),
                    multimode_error);
    CHECK_THROWS_AS(solve_he11(fiber, -1.0), invalid_input);
    CHECK_THROWS_AS(normalize_power(solve_he11(fiber, 1.06e-6), -1.0),
                    invalid_input);
    const auto m = normalize_power(solve_he11(fiber, 1.06e-6), 0.030);
    CHECK_THROWS_AS(intensity_circular(m, 0.1e-6), domain_error);
}
