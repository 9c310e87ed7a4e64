#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "nanotrap/analysis.hpp"
#include "nanotrap/constants.hpp"
#include "nanotrap/errors.hpp"
#include "nanotrap/trap.hpp"

// Quantized radial motion in the effective potential
//   U_eff = U_tot + hbar^2 (m^2 - 1/4) / (2 M r^2),
// discretized by second-order finite differences on a uniform grid with
// zero Dirichlet boundaries, eigenpairs from Sturm bisection plus inverse
// iteration. Tunneling through the inner wall toward the surface is
// ignored: the domain is truncated at the crest of the repulsive barrier.

namespace nanotrap {

// Centrifugal term for rotational quantum number m; attractive for m = 0.
inline double centrifugal_potential(double mass, int m_rot, double r) {
    return hbar * hbar * ((double)m_rot * m_rot - 0.25) / (2.0 * mass * r * r);
}

inline double effective_potential(const TrapConfiguration& cfg, int m_rot,
                                  double r, double phi = 0.0) {
    return total_potential(cfg, r, phi).total +
           centrifugal_potential(cfg.atom.mass, m_rot, r);
}

struct BoundStateSet {
    int m_rot = 0;
    int requested = 0;
    int count = 0;               // levels actually bound (E < 0)
    double r0 = 0, dr = 0;       // uniform grid r0 + i*dr, i = 0..n-1
    std::vector<double> energies;               // J, ascending
    std::vector<std::vector<double>> states;    // normalized, sum psi^2 dr = 1
    double delta_r = 0;          // rms width of the ground state, m

    double grid_point(int i) const { return r0 + i * dr; }
    int grid_size() const { return states.empty() ? 0 : (int)states[0].size(); }
};

namespace detail {

// Number of eigenvalues of the symmetric tridiagonal (d, e) below lambda.
inline int sturm_count(const std::vector<double>& d, const std::vector<double>& e,
                       double lambda) {
    int count = 0;
    double q = d[0] - lambda;
    if (q < 0) ++count;
    for (size_t i = 1; i < d.size(); ++i) {
        if (q == 0) q = 1e-300;
        q = d[i] - lambda - e[i - 1] * e[i - 1] / q;
        if (q < 0) ++count;
    }
    return count;
}

// k-th (0-based) eigenvalue by bisection on the Sturm count.
inline double tridiag_eigenvalue(const std::vector<double>& d,
                                 const std::vector<double>& e, int k) {
    double lo = d[0], hi = d[0];
    for (size_t i = 0; i < d.size(); ++i) {
        const double off = (i > 0 ? std::abs(e[i - 1]) : 0) +
                           (i + 1 < d.size() ? std::abs(e[i]) : 0);
        lo = std::min(lo, d[i] - off);
        hi = std::max(hi, d[i] + off);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (std::abs(lo) + std::abs(hi));
         ++it) {
        const double mid = 0.5 * (lo + hi);
        (sturm_count(d, e, mid) > k ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

// Inverse iteration for the eigenvector of (d, e) at eigenvalue lambda.
// Tridiagonal solve with partial pivoting (fill-in limited to the second
// superdiagonal).
inline std::vector<double> tridiag_eigenvector(const std::vector<double>& d,
                                               const std::vector<double>& e,
                                               double lambda) {
    const int n = (int)d.size();
    std::vector<double> x(n, 1.0 / std::sqrt((double)n));
    for (int iter = 0; iter < 4; ++iter) {
        std::vector<double> a(n), b(n), c2(n, 0.0), rhs = x;
        std::vector<double> sub(n, 0.0), sup(n, 0.0);
        for (int i = 0; i < n; ++i) a[i] = d[i] - lambda;
        for (int i = 0; i + 1 < n; ++i) sub[i + 1] = sup[i] = e[i];
        // forward elimination with row swaps
        for (int i = 0; i + 1 < n; ++i) {
            if (std::abs(sub[i + 1]) > std::abs(a[i])) {
                std::swap(a[i], sub[i + 1]);
                std::swap(sup[i], a[i + 1]);
                std::swap(c2[i], sup[i + 1]);
                std::swap(rhs[i], rhs[i + 1]);
            }
            if (a[i] == 0) a[i] = 1e-300;
            const double f = sub[i + 1] / a[i];
            a[i + 1] -= f * sup[i];
            sup[i + 1] -= f * c2[i];
            rhs[i + 1] -= f * rhs[i];
        }
        if (a[n - 1] == 0) a[n - 1] = 1e-300;
        x[n - 1] = rhs[n - 1] / a[n - 1];
        x[n - 2] = (rhs[n - 2] - sup[n - 2] * x[n - 1]) / a[n - 2];
        for (int i = n - 3; i >= 0; --i)
            x[i] = (rhs[i] - sup[i] * x[i + 1] - c2[i] * x[i + 2]) / a[i];
        double norm = 0;
        for (double v : x) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : x) v /= norm;
    }
    return x;
}

} // namespace detail

// Lowest n_levels eigenpairs of the radial Hamiltonian.
inline BoundStateSet solve_bound_states(const TrapConfiguration& cfg, int m_rot,
                                        int n_levels, int n_grid = 4000) {
    if (n_levels < 1) throw invalid_input("need n_levels >= 1");
    auto ueff = [&](double r) { return effective_potential(cfg, m_rot, r); };

    // minimum of the effective potential
    const double a = cfg.fiber.radius;
    const double rlo = a * (1.0 + 1e-4);
    const double rfar = a + 6.0 * cfg.red.decay_length();
    double r_m, u_m;
    if (!detail::radial_local_min(ueff, rlo, rfar, 2000, r_m, u_m) || u_m >= 0)
        throw no_trap_error("effective potential has no negative-energy well");

    // inner boundary: crest of the repulsive wall
    double r_in = rlo, crest = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3000; ++i) {
        const double r = rlo * std::pow(r_m / rlo, i / 2999.0);
        const double v = ueff(r);
        if (v > crest) {
            crest = v;
            r_in = r;
        }
    }
    // outer boundary: eight half-depth spans past the minimum
    double r_half = r_m;
    for (int i = 0; i < 2000; ++i) {
        const double r = r_m * std::pow((a + 15.0 * cfg.red.decay_length()) / r_m,
                                        i / 1999.0);
        if (ueff(r) < 0.5 * u_m) r_half = r;
    }
    const double r_out = r_m + 8.0 * (r_half - r_m);

    BoundStateSet set;
    set.m_rot = m_rot;
    set.requested = n_levels;
    set.r0 = r_in;
    set.dr = (r_out - r_in) / (n_grid + 1);
    // interior points only; psi = 0 at r_in and r_out
    std::vector<double> diag(n_grid), off(n_grid - 1);
    const double t = hbar * hbar / (2.0 * cfg.atom.mass * set.dr * set.dr);
    for (int i = 0; i < n_grid; ++i)
        diag[i] = 2.0 * t + ueff(r_in + (i + 1) * set.dr);
    for (int i = 0; i + 1 < n_grid; ++i) off[i] = -t;
    set.r0 = r_in + set.dr;

    for (int k = 0; k < n_levels; ++k) {
        const double ek = detail::tridiag_eigenvalue(diag, off, k);
        auto psi = detail::tridiag_eigenvector(diag, off, ek);
        // normalize to sum psi^2 dr = 1, sign: positive first antinode
        double norm = 0;
        for (double v : psi) norm += v * v * set.dr;
        norm = std::sqrt(norm);
        int imax = 0;
        for (int i = 0; i < n_grid; ++i)
            if (std::abs(psi[i]) > std::abs(psi[imax])) imax = i;
        int first = 0;
        while (first < n_grid && std::abs(psi[first]) < 1e-8 * std::abs(psi[imax]))
            ++first;
        const double s = psi[first] > 0 ? 1.0 : -1.0;
        for (double& v : psi) v *= s / norm;
        set.energies.push_back(ek);
        set.states.push_back(std::move(psi));
    }
    set.count = (int)std::count_if(set.energies.begin(), set.energies.end(),
                                   [](double e) { return e < 0; });

    // rms width of the ground state
    const auto& psi0 = set.states[0];
    double r1 = 0, r2 = 0;
    for (int i = 0; i < n_grid; ++i) {
        const double r = set.grid_point(i);
        r1 += r * psi0[i] * psi0[i] * set.dr;
        r2 += r * r * psi0[i] * psi0[i] * set.dr;
    }
    set.delta_r = std::sqrt(r2 - r1 * r1);
    return set;
}

// Level-spacing ratios (E_{n+1} - E_n) / (hbar omega_r); near 1 for a
// nearly harmonic well, drifting with anharmonicity.
inline std::vector<double> harmonic_check(const BoundStateSet& set, double omega_r) {
    if (set.energies.size() < 2)
        throw invalid_input("harmonic_check needs at least two levels");
    std::vector<double> ratios;
    for (size_t i = 0; i + 1 < set.energies.size(); ++i)
        ratios.push_back((set.energies[i + 1] - set.energies[i]) / (hbar * omega_r));
    return ratios;
}

} // namespace nanotrap
