#include <catch_amalgamated.hpp>

#include <cmath>

#include "nanotrap/bessel.hpp"

using namespace nanotrap::bessel;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Reference values computed with mpmath at 30 digits.

TEST_CASE("ordinary Bessel J at reference points") {
    CHECK_THAT(J0(0.5), WithinRel(0.938469807240812904, 1e-13));
    CHECK_THAT(J1(3.0), WithinRel(0.339058958525936459, 1e-13));
    // derivative identity J1'(x) = J0(x) - J1(x)/x
    const double x = 1.7;
    CHECK_THAT(J1p(x), WithinRel(J0(x) - J1(x) / x, 1e-12));
    // three-term recurrence J2 = 2 J1/x - J0
    CHECK_THAT(J2(x), WithinRel(2.0 * J1(x) / x - J0(x), 1e-12));
    CHECK_THAT(J3(x), WithinRel(4.0 * J2(x) / x - J1(x), 1e-12));
}

TEST_CASE("modified Bessel K and I at reference points") {
    CHECK_THAT(K0(1.0), WithinRel(0.421024438240708333, 1e-13));
    CHECK_THAT(std::cyl_bessel_k(5.0, 2.0), WithinRel(9.43104910059646744, 1e-13));
    CHECK_THAT(std::cyl_bessel_i(3.0, 2.0), WithinRel(0.212739959239852655, 1e-13));
    const double x = 0.9;
    CHECK_THAT(K2(x), WithinRel(2.0 * K1(x) / x + K0(x), 1e-12));
    CHECK_THAT(K1p(x), WithinRel(-0.5 * (K0(x) + K2(x)), 1e-12));
}

TEST_CASE("log-space arrays match reference values at moderate order") {
    // mpmath: K_10(5), I_8(10)
    CHECK_THAT(std::exp(log_Kn_array(10, 5.0)[10]),
               WithinRel(9.75856282917781013, 1e-11));
    CHECK_THAT(std::exp(log_In_array(8, 10.0)[8]),
               WithinRel(116.066432670136846, 1e-11));
    CHECK_THAT(log_Kn_array(4, 5.0)[0], WithinAbs(std::log(K0(5.0)), 1e-12));
    CHECK_THAT(log_In_array(4, 5.0)[0], WithinAbs(std::log(I0(5.0)), 1e-12));
}

TEST_CASE("log-space arrays at extreme order (beyond double range)") {
    // mpmath: log(K_150(3)), log(I_150(3))
    CHECK_THAT(log_Kn_array(150, 3.0)[150], WithinAbs(538.48145725766892, 1e-9));
    CHECK_THAT(log_In_array(150, 3.0)[150], WithinAbs(-544.185439701213521, 1e-9));
    CHECK_THAT(log_Kn_array(400, 80.0)[400], WithinAbs(514.274213911911555, 1e-9));
    CHECK_THAT(log_In_array(400, 80.0)[400], WithinAbs(-520.978436106169824, 1e-9));
    CHECK_THAT(log_Kn_array(800, 1000.0)[800], WithinAbs(-697.842037142957543, 1e-9));
    CHECK_THAT(log_In_array(800, 1000.0)[800], WithinAbs(689.993786518289162, 1e-9));
}

TEST_CASE("Wronskian I_n(x) K_{n+1}(x) + I_{n+1}(x) K_n(x) = 1/x from log arrays") {
    for (auto [n, x] : {std::pair{150, 3.0}, {400, 80.0}, {800, 1000.0}}) {
        const auto lnK = log_Kn_array(n + 1, x);
        const auto lnI = log_In_array(n + 1, x);
        const double w =
            std::exp(lnI[n] + lnK[n + 1]) + std::exp(lnI[n + 1] + lnK[n]);
        CHECK_THAT(w, WithinRel(1.0 / x, 1e-10));
    }
}
