// Spin-orbit product states on the dual Poincare spheres and their
// four-component amplitude decomposition over the parity-indexed basis.
//
// A first-order beam carries two qubits: the transverse spatial (orbital)
// state, parameterized by polar/azimuthal sphere angles (theta, phi), and
// the polarization (spin) state, parameterized by (alpha, beta).  The four
// basis modes E_jk are indexed by their parity j (spatial) and k
// (polarization) under a one-dimensional inversion of the horizontal axis.

#pragma once

#include <array>
#include <complex>

namespace spinorbit {

using cplx = std::complex<double>;

// Interferometer setting delta = +pi/2 or -pi/2.  The positive setting
// produces the collective mode Psi- at the outputs, the negative one Psi+.
enum class DeltaSign { positive, negative };

inline constexpr double delta_value(DeltaSign s) {
    return s == DeltaSign::positive ? 1.5707963267948966 : -1.5707963267948966;
}

inline constexpr int sign_factor(DeltaSign s) {
    return s == DeltaSign::positive ? +1 : -1;
}

// Orbital sphere angles (theta, phi) and spin sphere angles (alpha, beta),
// all in radians.  Angles are stored as given; canonical() maps theta and
// alpha into [0, pi] and phi, beta into [-pi, pi) without changing the
// physical state (the amplitudes may pick up one common sign).
struct PoincareAngles {
    double theta = 0.0;
    double phi = 0.0;
    double alpha = 0.0;
    double beta = 0.0;

    bool finite() const;
    PoincareAngles canonical() const;
};

// (j, k) with j, k in {0, 1}.  j+k even modes keep their sign under a
// reflection about the horizontal axis, j+k odd modes flip it.
struct BasisModeIndex {
    int j = 0;
    int k = 0;

    int flat() const { return j * 2 + k; }
    bool even_class() const { return (j + k) % 2 == 0; }

    static constexpr std::array<BasisModeIndex, 4> all() {
        return {BasisModeIndex{0, 0}, BasisModeIndex{0, 1},
                BasisModeIndex{1, 0}, BasisModeIndex{1, 1}};
    }

    friend bool operator==(BasisModeIndex, BasisModeIndex) = default;
};

// Reflection phase Pi_jk = (-1)^(j+k) acquired by basis mode E_jk on each
// mirror or beam-splitter reflection.
int parity_sign(BasisModeIndex idx);

// Complex coefficients over the basis {E00, E11, E10, E01}.  The overall
// field scale E is folded into the coefficients; `amplitude` records it so
// callers can recover the dimensionless state.  For a product state built
// with amplitude 1, |e00|^2+|e11|^2+|e10|^2+|e01|^2 == 1.
struct SpinOrbitAmplitudes {
    cplx e00{};
    cplx e11{};
    cplx e10{};
    cplx e01{};
    double amplitude = 1.0;

    cplx at(BasisModeIndex idx) const;
    cplx& at(BasisModeIndex idx);

    double norm_sq() const;

    // e00*e11 - e10*e01.  Exactly zero for every product state; a nonzero
    // value witnesses spin-orbit nonseparability.
    cplx separability_witness() const;
};

// Product-state decomposition:
//   e00 = E cos(theta/2) cos(alpha/2)
//   e11 = E sin(theta/2) sin(alpha/2) e^{i(phi+beta)}
//   e10 = E sin(theta/2) cos(alpha/2) e^{i phi}
//   e01 = E cos(theta/2) sin(alpha/2) e^{i beta}
// Throws std::invalid_argument for non-finite angles or amplitude < 0.
SpinOrbitAmplitudes product_amplitudes(const PoincareAngles& angles, double amplitude);

// Global-phase-insensitive comparison: true when the two coefficient sets
// agree up to one common unit-modulus factor, within tol per component.
bool physically_equal(const SpinOrbitAmplitudes& a, const SpinOrbitAmplitudes& b,
                      double tol = 1e-12);

// Coefficients of the collective output mode Psi-/Psi+ over the basis:
// (e00, e11, -i e10, -i e01) for the positive delta setting and
// (e00, e11, +i e10, +i e01) for the negative one.  Shared by the
// interferometer closed forms, the two-photon collective operators and the
// field evaluation layer.
SpinOrbitAmplitudes psi_coefficients(const SpinOrbitAmplitudes& amps, DeltaSign sign);

} // namespace spinorbit
