#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "nanotrap/errors.hpp"

namespace nanotrap {

// Gauss-Legendre nodes/weights on (0,1), computed once by Newton iteration
// on the Legendre polynomial and cached per order.
struct GaussLegendre {
    std::vector<double> x; // nodes in (0,1)
    std::vector<double> w;

    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            // initial guess (Chebyshev-like), then Newton on P_n
            double t = std::cos(pi_ * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (t * p1 - p0) / (t * t - 1.0);
                double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = 0.5 * (1.0 - t); // map [-1,1] -> (0,1), reversed order is fine
            w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
        }
    }

    static const GaussLegendre& cached(int n) {
        static thread_local std::vector<GaussLegendre> pool;
        for (const auto& g : pool)
            if ((int)g.x.size() == n) return g;
        pool.emplace_back(n);
        return pool.back();
    }

  private:
    static constexpr double pi_ = 3.14159265358979323846;
};

// Adaptive Simpson on [a,b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-10, int max_depth = 30) {
    struct Rec {
        static double go(const std::function<double(double)>& f, double a, double b,
                         double fa, double fm, double fb, double whole, double tol,
                         int depth) {
            double m = 0.5 * (a + b);
            double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            double flm = f(lm), frm = f(rm);
            double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
            double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
            if (depth <= 0) return left + right;
            if (std::abs(left + right - whole) < 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return go(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   go(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    };
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    return Rec::go(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Improper integral over (0,inf) via the rational map t -> s*t/(1-t),
// fixed-order Gauss-Legendre. Suits integrands with algebraic tails.
inline double integrate_halfline(const std::function<double(double)>& f,
                                 double scale, int order = 160) {
    const auto& g = GaussLegendre::cached(order);
    double sum = 0.0;
    for (int i = 0; i < order; ++i) {
        double t = g.x[i];
        double u = scale * t / (1.0 - t);
        double jac = scale / ((1.0 - t) * (1.0 - t));
        sum += g.w[i] * jac * f(u);
    }
    return sum;
}

} // namespace nanotrap
