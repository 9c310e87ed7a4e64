#include <catch_amalgamated.hpp>

#include <cmath>

#include "nanotrap/vdw.hpp"

using namespace nanotrap;
using Catch::Matchers::WithinRel;

namespace {
const FiberSpec fiber{0.2e-6, silica()};
}

TEST_CASE("flat-surface coefficient for cesium on silica") {
    const double c3 = c3_flat(cesium(), silica());
    // literature value for this atom/surface pair: 5.6e-49 J m^3
    CHECK_THAT(c3, WithinRel(5.6e-49, 5e-2));
    // converged in the quadrature order
    CHECK_THAT(c3, WithinRel(c3_flat(cesium(), silica(), 400), 1e-8));
    // convenience units: about 4.1e-5 mK um^3
    CHECK_THAT(joule_to_mK(c3) * 1e18, WithinRel(4.1e-5, 5e-2));
}

TEST_CASE("cylinder potential at the trap distance") {
    // 0.17 um from the surface of a 0.2 um fiber: about -5 uK
    const auto v = vdw_cylinder(cesium(), fiber, 0.37e-6);
    CHECK_THAT(joule_to_uK(v.energy), WithinRel(-5.11, 3e-2));
    CHECK(v.tail < 1e-5);
}

TEST_CASE("cylinder potential approaches the flat-surface law near the wall") {
    const double c3 = c3_flat(cesium(), silica());
    const double a = fiber.radius;
    double prev_ratio = 0.0;
    for (double D : {2e-9, 10e-9, 50e-9, 170e-9, 300e-9}) {
        const double v = vdw_cylinder(cesium(), fiber, a + D).energy;
        const double ratio = v / vdw_flat(c3, D);
        CHECK(v < 0);
        CHECK(ratio > 0.0);
        CHECK(ratio < 1.0);
        if (prev_ratio > 0) CHECK(ratio < prev_ratio); // falls with distance
        prev_ratio = ratio;
    }
    // at D = 2 nm the curvature correction is already small
    const double near = vdw_cylinder(cesium(), fiber, a + 2e-9).energy;
    CHECK_THAT(near / vdw_flat(c3, 2e-9), WithinRel(1.0, 0.15));
}

TEST_CASE("smaller fiber radius weakens the potential at fixed distance") {
    const FiberSpec thick{0.4e-6, silica()};
    const double D = 0.05e-6;
    const double v_thin = vdw_cylinder(cesium(), fiber, fiber.radius + D).energy;
    const double v_thick = vdw_cylinder(cesium(), thick, thick.radius + D).energy;
    CHECK(std::abs(v_thin) < std::abs(v_thick));
}

TEST_CASE("quadrature refinement leaves the result unchanged") {
    const double v80 = vdw_cylinder(cesium(), fiber, 0.3e-6, 1e-6, 4000, 80).energy;
    const double v120 = vdw_cylinder(cesium(), fiber, 0.3e-6, 1e-7, 4000, 120).energy;
    CHECK_THAT(v80, WithinRel(v120, 1e-4));
}

TEST_CASE("interpolation cache tracks the direct evaluation") {
    const VdwCache cache(cesium(), fiber, 1e-9, 2e-6);
    for (double D : {3e-9, 2.4e-8, 1.7e-7, 9e-7}) {
        const double direct = vdw_cylinder(cesium(), fiber, fiber.radius + D).energy;
        CHECK_THAT(cache(fiber.radius + D), WithinRel(direct, 1e-3));
    }
    // below the first node the cache falls back to the -C3/D^3 wall shape
    CHECK(cache(fiber.radius + 1e-10) < cache(fiber.radius + 1e-9));
    CHECK_THROWS_AS(cache(fiber.radius), domain_error);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(vdw_cylinder(cesium(), fiber, 0.1e-6), domain_error);
    CHECK_THROWS_AS(vdw_flat(1e-49, 0.0), domain_error);
}
