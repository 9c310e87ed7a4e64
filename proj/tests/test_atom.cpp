#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "nanotrap/atom.hpp"

using namespace nanotrap;
using Catch::Matchers::WithinRel;

// Reference polarizabilities computed with mpmath from the four-line
// sum-over-states formula (damping negligible this far off resonance).

TEST_CASE("cesium polarizability at the two trap wavelengths") {
    const auto cs = cesium();
    const double om_red = 2.0 * pi * c_light / 1.06e-6;
    const double om_blue = 2.0 * pi * c_light / 700e-9;
    CHECK_THAT(polarizability_real(cs, om_red),
               WithinRel(1.92422531448859917e-38, 1e-9));
    CHECK_THAT(polarizability_real(cs, om_blue),
               WithinRel(-1.19524218257122005e-38, 1e-9));
    CHECK_THAT(polarizability_real(cs, 0.0),
               WithinRel(6.32266759494863816e-39, 1e-9));
}

TEST_CASE("sign flips across the dominant resonance") {
    const auto cs = cesium();
    const double om_d2 = cs.lines.front().omega();
    CHECK(polarizability_real(cs, 0.97 * om_d2) > 0);
    CHECK(polarizability_real(cs, 1.03 * om_d2) < 0);
}

TEST_CASE("two-level relation between real and imaginary parts") {
    // For a single line, kappa / alpha = gamma omega / (w^2 - omega^2).
    AtomModel a;
    a.name = "two-level";
    a.mass = 1e-25;
    a.g_ground = 2;
    a.lines = {{852.113e-9, 3.276e7, 4}};
    const double w = a.lines[0].omega();
    for (double om : {0.5 * w, 0.9 * w, 1.2 * w}) {
        const double ratio = polarizability_imag(a, om) / polarizability_real(a, om);
        CHECK_THAT(ratio, WithinRel(a.lines[0].gamma * om / (w * w - om * om), 1e-10));
    }
}

TEST_CASE("imaginary-axis polarizability is positive and decreasing") {
    const auto cs = cesium();
    double prev = polarizability_imag_axis(cs, 0.0);
    CHECK_THAT(prev, WithinRel(polarizability_real(cs, 0.0), 1e-10));
    for (double xi = 1e14; xi < 1e18; xi *= 10.0) {
        const double v = polarizability_imag_axis(cs, xi);
        CHECK(v > 0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("recoil energies of the trap photons") {
    const auto cs = cesium();
    // hbar^2 k^2 / 2M: about 0.064 uK (red) and 0.146 uK (blue)
    CHECK_THAT(joule_to_uK(recoil_energy(1.06e-6, cs.mass)),
               WithinRel(0.0637, 2e-2));
    CHECK_THAT(joule_to_uK(recoil_energy(700e-9, cs.mass)),
               WithinRel(0.1460, 2e-2));
}

TEST_CASE("atom data file round-trips the built-in model") {
    const char* path = "test_atom_roundtrip.txt";
    {
        std::ofstream f(path);
        f << "# test data\nname cesium\nmass_kg 2.20695e-25\ng_ground 2\n"
             "852.113 3.276e7 4\n894.347 2.87e7 2\n"
             "455.528 1.88e6 4\n459.317 8e5 2\n";
    }
    const auto loaded = load_atom(path);
    const auto ref = cesium();
    REQUIRE(loaded.lines.size() == ref.lines.size());
    CHECK(loaded.mass == ref.mass);
    CHECK(loaded.g_ground == ref.g_ground);
    for (size_t i = 0; i < ref.lines.size(); ++i) {
        CHECK_THAT(loaded.lines[i].wavelength, WithinRel(ref.lines[i].wavelength, 1e-14));
        CHECK(loaded.lines[i].gamma == ref.lines[i].gamma);
        CHECK(loaded.lines[i].g_upper == ref.lines[i].g_upper);
    }
    std::remove(path);
}

TEST_CASE("validation rejects malformed atoms") {
    AtomModel a = cesium();
    a.mass = -1;
    CHECK_THROWS_AS(a.validate(), invalid_input);
    a = cesium();
    a.lines.clear();
    CHECK_THROWS_AS(a.validate(), invalid_input);
    CHECK_THROWS_AS(load_atom("does_not_exist.txt"), invalid_input);
    CHECK_THROWS_AS(polarizability_real(cesium(), -1.0), invalid_input);
}
