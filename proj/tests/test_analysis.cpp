#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "nanotrap/analysis.hpp"

using namespace nanotrap;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

TrapConfiguration baseline(Polarization pol = Polarization::circular,
                           double p1 = 0.030, double p2 = 0.029) {
    return make_configuration(FiberSpec{0.2e-6, silica()}, cesium(), 1.06e-6,
                              p1, 700e-9, p2, pol, true);
}

// brute-force grid oracle for the radial minimum
double grid_minimum(const TrapConfiguration& cfg, double phi, double& u_min) {
    const double a = cfg.fiber.radius;
    double best_r = 0;
    u_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 20000; ++i) {
        const double r = a * (1.0 + 1e-4) + (2.0e-6 - a) * i / 20000.0;
        const double u = total_potential(cfg, r, phi).total;
        // skip the surface hole: only consider r past the repulsive crest
        if (i > 0 && u < u_min && r > a + 0.05e-6) {
            u_min = u;
            best_r = r;
        }
    }
    return best_r;
}

} // namespace

TEST_CASE("minimum finder agrees with a brute-force scan (circular)") {
    const auto cfg = baseline();
    const auto m = find_minimum(cfg);
    double u_scan;
    const double r_scan = grid_minimum(cfg, 0.0, u_scan);
    CHECK_THAT(m.r, WithinAbs(r_scan, 2e-10));
    CHECK(m.value <= u_scan + 1e-30);
    CHECK(m.phi == 0.0);
    // headline numbers of the worked example
    CHECK_THAT(m.r * 1e6, WithinRel(0.37, 2e-2));
    CHECK_THAT(joule_to_mK(m.value), WithinRel(-2.88, 2e-2));
}

TEST_CASE("scattering, coherence, and recoil lifetime at the minimum") {
    const auto cfg = baseline();
    const auto m = find_minimum(cfg);
    const auto s = scattering_rates(cfg, m.r, m.phi);
    CHECK(s.gamma_red > 0);
    CHECK(s.gamma_blue > 0);
    CHECK_THAT(s.gamma_total, WithinRel(s.gamma_red + s.gamma_blue, 1e-13));
    CHECK_THAT(s.tau_coh, WithinRel(1.0 / s.gamma_total, 1e-13));
    // worked example: ~22 + ~8 per second, ~32 ms, ~540 s
    CHECK_THAT(s.gamma_red, WithinRel(22.4, 0.10));
    CHECK_THAT(s.gamma_blue, WithinRel(8.4, 0.10));
    const double tau = trap_lifetime(cfg, -m.value, s);
    CHECK_THAT(tau, WithinRel(540.0, 0.10));
}

TEST_CASE("harmonic frequency and localization at the minimum") {
    const auto cfg = baseline();
    const auto m = find_minimum(cfg);
    const auto f = harmonic_frequencies(cfg, m.r, m.phi);
    CHECK_THAT(f.omega_r / (2 * pi) / 1e3, WithinRel(492.0, 2e-2));
    CHECK(f.omega_phi == 0.0);
    // step-size refinement leaves the curvature unchanged
    const auto f2 = harmonic_frequencies(cfg, m.r, m.phi, 3e-4);
    CHECK_THAT(f.omega_r, WithinRel(f2.omega_r, 1e-4));
    // rms ground-state size
    CHECK_THAT(ground_state_size(f.omega_r, cfg.atom.mass),
               WithinRel(std::sqrt(hbar / (2 * cfg.atom.mass * f.omega_r)), 1e-13));
    CHECK_THROWS_AS(ground_state_size(0.0, cfg.atom.mass), invalid_input);
}

TEST_CASE("barrier between surface and minimum is positive and finite") {
    const auto cfg = baseline();
    const auto m = find_minimum(cfg);
    const double b = barrier_height(cfg, m.r, m.phi, m.value);
    CHECK(b > -m.value);          // crest is above zero here
    CHECK(b < 2.0 * -m.value);    // and of the same scale as the depth
}

TEST_CASE("red power deepens the trap, blue power lifts and pushes it out") {
    const auto rep30 = analyze(baseline());
    const auto rep35 = analyze(baseline(Polarization::circular, 0.035));
    CHECK(rep35.depth > rep30.depth);
    CHECK(rep35.r_m < rep30.r_m);

    const auto repb35 = analyze(baseline(Polarization::circular, 0.030, 0.035));
    CHECK(repb35.depth < rep30.depth);
    CHECK(repb35.r_m > rep30.r_m);
    CHECK(repb35.barrier > rep30.barrier);
}

TEST_CASE("full report for the linear scheme") {
    const auto rep = analyze(baseline(Polarization::linear_x, 0.030, 0.035));
    CHECK(rep.scheme == "linear");
    CHECK(rep.phi_m == 0.0);
    CHECK_THAT(rep.r_m * 1e6, WithinRel(0.40, 2e-2));
    CHECK_THAT(joule_to_mK(-rep.depth), WithinRel(-3.2, 3e-2));
    CHECK(rep.freq_phi > 0);
    CHECK(rep.freq_r > rep.freq_phi);
    CHECK(rep.loc_phi > rep.loc_r);
    // the azimuthal well: phi = pi/2 sits well above the minimum
    const auto cfg = baseline(Polarization::linear_x, 0.030, 0.035);
    const double du = total_potential(cfg, rep.r_m, pi / 2).total -
                      total_potential(cfg, rep.r_m, 0.0).total;
    CHECK_THAT(joule_to_mK(du), WithinRel(1.2, 0.15));
}

TEST_CASE("no trap raises the dedicated error") {
    CHECK_THROWS_AS(find_minimum(baseline(Polarization::circular, 0.030, 0.004)),
                    no_trap_error);
}
