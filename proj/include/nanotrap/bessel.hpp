#pragma once

#include <cmath>
#include <vector>

#include "nanotrap/errors.hpp"

// Modified Bessel functions. Orders 0..2 delegate to the libstdc++
// implementations (accurate to ~1e-15 relative on the range used here);
// K2 and the derivatives come from the standard recurrences
//   K2 = K0 + 2 K1/x,   Kn' = -(K_{n-1}+K_{n+1})/2,   In' = (I_{n-1}+I_{n+1})/2.
// The vdW kernel needs K_n and I_n at orders up to ~10^3 where the values
// overflow/underflow the double range, so log-magnitude arrays are built by
// recurrence in log space.

namespace nanotrap::bessel {

inline double J0(double x) { return std::cyl_bessel_j(0.0, x); }
inline double J1(double x) { return std::cyl_bessel_j(1.0, x); }
inline double J2(double x) { return std::cyl_bessel_j(2.0, x); }
inline double J3(double x) { return std::cyl_bessel_j(3.0, x); }
inline double J1p(double x) { return 0.5 * (J0(x) - J2(x)); }

inline double K0(double x) { return std::cyl_bessel_k(0.0, x); }
inline double K1(double x) { return std::cyl_bessel_k(1.0, x); }
inline double K2(double x) { return K0(x) + 2.0 * K1(x) / x; }
inline double K3(double x) { return std::cyl_bessel_k(3.0, x); }
inline double K1p(double x) { return -0.5 * (K0(x) + K2(x)); }

inline double I0(double x) { return std::cyl_bessel_i(0.0, x); }
inline double I1(double x) { return std::cyl_bessel_i(1.0, x); }

// ln K_n(x) for n = 0..nmax+1. Upward recurrence K_{n+1} = K_{n-1} + (2n/x) K_n
// carried in log space; stable for all n (K grows with order).
inline std::vector<double> log_Kn_array(int nmax, double x) {
    std::vector<double> ln(nmax + 2);
    if (x < 650.0) {
        ln[0] = std::log(K0(x));
        ln[1] = std::log(K1(x));
    } else {
        // asymptotic: K_n(x) ~ sqrt(pi/2x) e^-x (1 + (4n^2-1)/8x + ...)
        double base = 0.5 * std::log(1.5707963267948966 / x) - x;
        ln[0] = base + std::log1p(-1.0 / (8 * x) + 9.0 / (128 * x * x));
        ln[1] = base + std::log1p(3.0 / (8 * x) - 15.0 / (128 * x * x));
    }
    for (int n = 1; n <= nmax; ++n) {
        double d = ln[n - 1] - ln[n];
        ln[n + 1] = ln[n] + std::log(std::exp(d) + 2.0 * n / x);
    }
    return ln;
}

// ln I_n(x) for n = 0..nmax+1 via continued-fraction ratios
// r_n = I_{n+1}/I_n (Gautschi); each ratio is in (0,1) so the log sum is
// stable downward in magnitude.
inline std::vector<double> log_In_array(int nmax, double x) {
    std::vector<double> ln(nmax + 2);
    if (x < 650.0) {
        ln[0] = std::log(I0(x));
    } else {
        double base = x - 0.5 * std::log(2.0 * 3.14159265358979323846 * x);
        ln[0] = base + std::log1p(1.0 / (8 * x) + 9.0 / (128 * x * x));
    }
    // single backward sweep for every ratio r_n = I_{n+1}/I_n; the start
    // order must exceed both nmax and ~1.5 x for the tail to have converged
    const int start = nmax + 64 + (int)(1.5 * x);
    std::vector<double> ratio(nmax + 1);
    double r = 0.0;
    for (int m = start; m > 0; --m) {
        r = 1.0 / (2.0 * m / x + r); // I_m / I_{m-1}
        if (m <= nmax + 1) ratio[m - 1] = r;
    }
    for (int n = 0; n <= nmax; ++n) ln[n + 1] = ln[n] + std::log(ratio[n]);
    return ln;
}

} // namespace nanotrap::bessel
