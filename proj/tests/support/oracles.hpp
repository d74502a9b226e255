// Independent reference implementations used only by tests.
//
// DenseTwoPhoton keeps the full two-photon state of the eight-mode port pair
// as a symmetric 8x8 coefficient matrix and transforms it by a dense mode
// unitary, bypassing the sparse polynomial algebra entirely.  The quadrature
// helper integrates transverse densities with composite Simpson in r and a
// trapezoid rule in the periodic azimuth.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "spinorbit/fock.hpp"

namespace oracles {

using spinorbit::cplx;

// Slot layout: 0..3 first port (a before / c after), 4..7 second port
// (b before / d after); mode index j*2+k within the port.
struct DenseTwoPhoton {
    // state = sum_{m,n} s[m][n] op+_m op+_n |vac>, s symmetric.
    std::array<std::array<cplx, 8>, 8> s{};

    static DenseTwoPhoton from_polynomial(const spinorbit::OperatorPolynomial& poly) {
        DenseTwoPhoton state;
        for (const auto& [mono, coef] : poly.terms()) {
            // Label codes: 0..7 input side (a, b), 8..15 output side (c, d).
            const int lo = mono.lo < 8 ? mono.lo : mono.lo - 8;
            const int hi = mono.hi < 8 ? mono.hi : mono.hi - 8;
            if (lo == hi) {
                state.s[lo][lo] += coef;
            } else {
                state.s[lo][hi] += coef / 2.0;
                state.s[hi][lo] += coef / 2.0;
            }
        }
        return state;
    }

    // Mode substitution op+_m -> sum_k w[m][k] out+_k gives s' = w^T s w.
    DenseTwoPhoton transformed(const std::array<std::array<cplx, 8>, 8>& w) const {
        DenseTwoPhoton out;
        for (int k = 0; k < 8; ++k) {
            for (int l = 0; l < 8; ++l) {
                cplx acc{};
                for (int m = 0; m < 8; ++m) {
                    if (w[m][k] == cplx{}) continue;
                    for (int n = 0; n < 8; ++n) acc += w[m][k] * s[m][n] * w[n][l];
                }
                out.s[k][l] = acc;
            }
        }
        return out;
    }

    double norm_sq() const {
        double total = 0.0;
        for (int m = 0; m < 8; ++m) {
            total += 2.0 * std::norm(s[m][m]);
            for (int n = m + 1; n < 8; ++n) total += std::norm(2.0 * s[m][n]);
        }
        return total;
    }

    // Probability of one photon in slots 0..3 and one in 4..7.
    double coincidence() const {
        double mixed = 0.0;
        for (int m = 0; m < 4; ++m)
            for (int n = 4; n < 8; ++n) mixed += std::norm(2.0 * s[m][n]);
        return mixed / norm_sq();
    }

    cplx monomial_coefficient(int lo, int hi) const {
        return lo == hi ? s[lo][lo] : 2.0 * s[lo][hi];
    }
};

// The port-pair substitution as a dense mode matrix for internal phase delta.
inline std::array<std::array<cplx, 8>, 8> substitution_matrix(double delta) {
    const double sn = std::sin(delta / 2.0);
    const double cs = std::cos(delta / 2.0);
    const cplx i(0.0, 1.0);

    std::array<std::array<cplx, 8>, 8> w{};
    for (int mode = 0; mode < 4; ++mode) {
        const bool even = ((mode / 2) + (mode % 2)) % 2 == 0;
        const int a = mode, b = mode + 4, c = mode, d = mode + 4;
        if (even) {
            w[a][c] = i * sn;
            w[a][d] = i * cs;
            w[b][c] = i * cs;
            w[b][d] = -i * sn;
        } else {
            w[a][c] = cs;
            w[a][d] = sn;
            w[b][c] = sn;
            w[b][d] = -cs;
        }
    }
    return w;
}

// Composite Simpson in r on [0, r_max], trapezoid in the periodic azimuth.
inline double integrate_polar(const std::function<double(double, double)>& f,
                              double r_max, int radial_panels, int azimuth_samples) {
    if (radial_panels % 2 != 0)
        throw std::invalid_argument("integrate_polar: radial_panels must be even");

    const double pi = 3.14159265358979323846;
    const double hr = r_max / radial_panels;
    const double hphi = 2.0 * pi / azimuth_samples;

    double total = 0.0;
    for (int i = 0; i <= radial_panels; ++i) {
        const double r = i * hr;
        double ring = 0.0;
        for (int j = 0; j < azimuth_samples; ++j) ring += f(r, j * hphi);
        ring *= hphi;

        double weight = (i == 0 || i == radial_panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        total += weight * ring * r;
    }
    return total * hr / 3.0;
}

} // namespace oracles
