#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "nanotrap/atom.hpp"
#include "nanotrap/bessel.hpp"
#include "nanotrap/constants.hpp"
#include "nanotrap/dielectric.hpp"
#include "nanotrap/errors.hpp"
#include "nanotrap/fiber.hpp"
#include "nanotrap/quadrature.hpp"

// van der Waals potential of a ground-state atom outside a cylindrical
// dielectric rod,
//   V(r) = hbar/(4 pi^3 eps0) sum_n int dk [k^2 Kn'^2(kr) + (k^2+n^2/r^2) Kn^2(kr)]
//                              int dxi alpha(i xi) G_n(i xi),
//   G_n = (eps-eps0) In(ka) In'(ka) / (eps0 In Kn'(ka) - eps In' Kn(ka)),
// plus the flat-surface C3 reference.

namespace nanotrap {

struct VdwResult {
    double r;            // m
    double energy;       // J, negative
    int terms;           // azimuthal orders summed (n = 0..terms)
    double tail;         // magnitude of the last n-term relative to the sum
};

namespace detail {

// Imaginary-axis quadrature grid shared by every (n, k) pair: nodes xi_j
// with combined weights alpha(i xi_j) * w_j, plus eps(i xi_j)/eps0 - 1.
struct ImagAxisGrid {
    std::vector<double> alpha_w;
    std::vector<double> eps_m1;

    ImagAxisGrid(const AtomModel& atom, const DielectricModel& diel, int order = 120) {
        const auto& g = GaussLegendre::cached(order);
        const double xi_scale = atom.lines.front().omega();
        alpha_w.resize(order);
        eps_m1.resize(order);
        for (int j = 0; j < order; ++j) {
            const double t = g.x[j];
            const double xi = xi_scale * t / (1.0 - t);
            const double jac = xi_scale / ((1.0 - t) * (1.0 - t));
            alpha_w[j] = g.w[j] * jac * polarizability_imag_axis(atom, xi);
            eps_m1[j] = diel.epsilon_rel_imag_axis(xi) - 1.0;
        }
    }
};

} // namespace detail

// Potential at radius r > a. tol controls the n-sum truncation.
inline VdwResult vdw_cylinder(const AtomModel& atom, const FiberSpec& fiber,
                              double r, double tol = 1e-6, int n_cap = 4000,
                              int k_order = 80) {
    if (r <= fiber.radius) throw domain_error("vdw_cylinder: r must be > a");
    atom.validate();
    const double a = fiber.radius;
    const double D = r - a;

    const detail::ImagAxisGrid grid(atom, fiber.core);

    // k-nodes mapped to (0,inf) with the exp(-2kD) decay scale
    const auto& gk = GaussLegendre::cached(k_order);
    std::vector<double> kk(k_order), kw(k_order);
    const double ks = 1.0 / (2.0 * D);
    for (int i = 0; i < k_order; ++i) {
        const double t = gk.x[i];
        kk[i] = ks * t / (1.0 - t);
        kw[i] = gk.w[i] * ks / ((1.0 - t) * (1.0 - t));
    }

    // orders needed grow like r/D near the surface
    const int nmax = std::min(n_cap, (int)(40 + 8.0 * r / D));

    // log-magnitude Bessel tables per k-node
    std::vector<std::vector<double>> lnKr(k_order), lnKa(k_order), lnIa(k_order);
    for (int i = 0; i < k_order; ++i) {
        lnKr[i] = bessel::log_Kn_array(nmax, kk[i] * r);
        lnKa[i] = bessel::log_Kn_array(nmax, kk[i] * a);
        lnIa[i] = bessel::log_In_array(nmax, kk[i] * a);
    }

    const int nxi = (int)grid.alpha_w.size();
    double total = 0.0;
    double last = 0.0;
    int n_used = 0;
    for (int n = 0; n <= nmax; ++n) {
        double contrib = 0.0;
        for (int i = 0; i < k_order; ++i) {
            const double kv = kk[i];
            const double xa = kv * a;
            const auto& Kr = lnKr[i];
            const auto& Ka = lnKa[i];
            const auto& Ia = lnIa[i];
            // ln of |Kn'(kr)| and In'(ka) from the recurrences, in log space
            double lnKrp, lnIap;
            if (n == 0) {
                lnKrp = Kr[1];
                lnIap = Ia[1];
            } else {
                const double mK = std::max(Kr[n - 1], Kr[n + 1]);
                lnKrp = mK + std::log(0.5 * (std::exp(Kr[n - 1] - mK) +
                                             std::exp(Kr[n + 1] - mK)));
                const double mI = std::max(Ia[n - 1], Ia[n + 1]);
                lnIap = mI + std::log(0.5 * (std::exp(Ia[n - 1] - mI) +
                                             std::exp(Ia[n + 1] - mI)));
            }
            const double IpK = std::exp(lnIap + Ka[n]); // In'(ka) Kn(ka), bounded
            // [k^2 Kn'^2 + (k^2+n^2/r^2) Kn^2](kr) * In(ka) In'(ka); every
            // exponent pairs a growing I with a decaying K, so the exp is safe
            const double base = Ia[n] + lnIap;
            const double rad_iip =
                kv * kv * std::exp(2.0 * lnKrp + base) +
                (kv * kv + (double)n * n / (r * r)) * std::exp(2.0 * Kr[n] + base);
            double xig = 0.0;
            for (int j = 0; j < nxi; ++j) {
                const double em1 = grid.eps_m1[j];
                xig += grid.alpha_w[j] * em1 / (-1.0 / xa - em1 * IpK);
            }
            contrib += kw[i] * rad_iip * xig;
        }
        if (n > 0) contrib *= 2.0; // term(n) = term(-n)
        total += contrib;
        last = std::abs(contrib);
        n_used = n;
        if (n > 5 && last < tol * std::abs(total)) break;
    }
    const double energy = hbar / (4.0 * pi * pi * pi * epsilon0) * total;
    if (n_used == nmax && nmax == n_cap && last > 10 * tol * std::abs(total))
        throw convergence_error("vdw_cylinder: azimuthal sum not converged", energy);
    return {r, energy, n_used, last / std::abs(total)};
}

// Flat-surface coefficient C3 = hbar/(16 pi^2 eps0) int dxi alpha(i xi)
// (eps(i xi)-eps0)/(eps(i xi)+eps0). Positive; J m^3.
inline double c3_flat(const AtomModel& atom, const DielectricModel& diel,
                      int order = 200) {
    atom.validate();
    const double xi_scale = atom.lines.front().omega();
    const double val = integrate_halfline(
        [&](double xi) {
            const double e = diel.epsilon_rel_imag_axis(xi);
            return polarizability_imag_axis(atom, xi) * (e - 1.0) / (e + 1.0);
        },
        xi_scale, order);
    return hbar / (16.0 * pi * pi * epsilon0) * val;
}

// V_flat = -C3 / D^3.
inline double vdw_flat(double c3, double D) {
    if (D <= 0) throw domain_error("vdw_flat: D must be > 0");
    return -c3 / (D * D * D);
}

// Cubic-interpolated cache of V(r) on a geometric D-grid. The interpolant
// works on W(ln D) = ln(-V D^3), which is slowly varying, so ~60 nodes give
// much better than the 1e-3 kernel tolerance across the whole range.
class VdwCache {
  public:
    VdwCache() = default;

    VdwCache(const AtomModel& atom, const FiberSpec& fiber, double d_min,
             double d_max, int n_nodes = 64)
        : a_(fiber.radius) {
        lnD_.resize(n_nodes);
        w_.resize(n_nodes);
        for (int i = 0; i < n_nodes; ++i) {
            const double D =
                d_min * std::pow(d_max / d_min, (double)i / (n_nodes - 1));
            lnD_[i] = std::log(D);
            const double V = vdw_cylinder(atom, fiber, a_ + D).energy;
            w_[i] = std::log(-V * D * D * D);
        }
        build_spline();
    }

    bool empty() const { return lnD_.empty(); }
    double d_min() const { return std::exp(lnD_.front()); }
    double d_max() const { return std::exp(lnD_.back()); }

    double operator()(double r) const {
        const double D = r - a_;
        if (D <= 0) throw domain_error("VdwCache: r must be > a");
        const double x = std::log(D);
        double w;
        if (x <= lnD_.front()) {
            w = w_.front(); // -C3-like extrapolation: W constant
        } else if (x >= lnD_.back()) {
            // extrapolate the last segment linearly in ln D
            const int i = (int)lnD_.size() - 2;
            w = eval_seg(i, x);
        } else {
            int lo = 0, hi = (int)lnD_.size() - 1;
            while (hi - lo > 1) {
                const int mid = (lo + hi) / 2;
                (lnD_[mid] <= x ? lo : hi) = mid;
            }
            w = eval_seg(lo, x);
        }
        return -std::exp(w) / (D * D * D);
    }

  private:
    double a_ = 0;
    std::vector<double> lnD_, w_, m_; // nodes, values, slopes

    void build_spline() { // cubic Hermite with finite-difference slopes
        const int n = (int)lnD_.size();
        m_.resize(n);
        for (int i = 0; i < n; ++i) {
            if (i == 0)
                m_[i] = (w_[1] - w_[0]) / (lnD_[1] - lnD_[0]);
            else if (i == n - 1)
                m_[i] = (w_[n - 1] - w_[n - 2]) / (lnD_[n - 1] - lnD_[n - 2]);
            else
                m_[i] = (w_[i + 1] - w_[i - 1]) / (lnD_[i + 1] - lnD_[i - 1]);
        }
    }

    double eval_seg(int i, double x) const {
        const double hseg = lnD_[i + 1] - lnD_[i];
        const double t = (x - lnD_[i]) / hseg;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * w_[i] + (t3 - 2 * t2 + t) * hseg * m_[i] +
               (-2 * t3 + 3 * t2) * w_[i + 1] + (t3 - t2) * hseg * m_[i + 1];
    }
};

} // namespace nanotrap
