// Transverse field evaluation: the Gaussian radial envelope, the four
// parity basis modes, and the collective vector modes Psi-/Psi+ via both
// the basis-sum route and the fully parameterized closed form.
//
// Azimuth convention: phi_az is the beam-frame azimuthal coordinate of the
// mode functions, measured from the beam-frame horizontal axis (the basis
// fields are G sin(phi_az) / G cos(phi_az) on the vertical / horizontal
// polarization components).  Grids render the camera view of the beam; see
// pixel_coords() for the pixel mapping.
//
// All lengths are in units of the beam radius w0 unless stated otherwise;
// the model is scale-invariant.

#pragma once

#include <functional>
#include <vector>

#include "spinorbit/modes.hpp"

namespace spinorbit {

// Transverse polarization components of the field at one point.
struct JonesVector {
    cplx ex{}; // horizontal
    cplx ey{}; // vertical
};

// |ex|^2 + |ey|^2, the cycle-averaged power density up to constants.
double power_density(const JonesVector& v);

// Radial envelope sqrt(8/pi) (r/w0^2) exp(-(r/w0)^2), normalized so the
// basis modes integrate to unit power over the full transverse plane.
// Throws std::invalid_argument for w0 <= 0 or r < 0.
double gaussian_profile(double r, double w0);

// Basis mode E_jk at (r, phi_az):
//   E00 = G sinP y,  E11 = G cosP x,  E10 = G cosP y,  E01 = G sinP x.
JonesVector basis_field(BasisModeIndex idx, double r, double phi_az, double w0);

// Psi_sign = (e00 E00 + e11 E11) -+ i (e10 E10 + e01 E01), evaluated
// pointwise (upper sign for DeltaSign::positive).
JonesVector psi_from_basis(const SpinOrbitAmplitudes& amps, DeltaSign sign,
                           double r, double phi_az, double w0);

// A+- = sin^2(t/2) cos^2 P +- cos^2(t/2) sin^2 P,  B = (1/2) sin t sin 2P.
// A+ +- B sin(phi) is the squared scalar mode magnitude |psi_-+|^2/(EG)^2
// and is non-negative for every input.
struct ABSymbols {
    double a_plus = 0.0;
    double a_minus = 0.0;
    double b = 0.0;
};

ABSymbols ab_symbols(double theta, double phi_az);

// Closed-form Psi_sign directly from the sphere angles:
//
//   E G e^{i arg(psi_s)} [ cos(a/2) sqrt(A+ +- B sin phi) y
//        -+ i sin(a/2) sqrt(A+ -+ B sin phi) e^{i(beta + drel)} x ]
//
// where psi_-+ = E G [cos(t/2) sinP -+ i sin(t/2) cosP e^{i phi}] and drel
// is the branch-correct relative phase arg(psi_opp) - arg(psi_s), computed
// with two-argument atan2 from the real/imaginary parts of both scalars.
// At nodal points (both parts zero) the phase is taken as 0; the amplitude
// vanishes there, so the choice only fixes determinism.  Pointwise equal to
// psi_from_basis(product_amplitudes(angles, amplitude), sign).
JonesVector psi_parameterized(const PoincareAngles& angles, DeltaSign sign,
                              double r, double phi_az, double w0, double amplitude);

// Power density at one output port for a single beam into port a at
// delta = +-pi/2: (1/2) E^2 G^2 (A+ +- B sin(phi) cos(alpha)).  Equals
// power_density(psi_parameterized(...)) / 2.
double single_input_power(const PoincareAngles& angles, DeltaSign sign,
                          double r, double phi_az, double w0, double amplitude);

// Square grid of samples centered on the beam axis.  Nodes sit at
// -H + j*spacing with spacing = 2H/(N-1), so the boundary is sampled.
struct GridSpec {
    double half_extent = 4.0;
    int samples_per_axis = 257;
    double waist_w0 = 1.0;

    double spacing() const { return 2.0 * half_extent / (samples_per_axis - 1); }
    void validate() const; // throws std::invalid_argument
};

// Beam-frame coordinates of one pixel.  The grid is the camera view of the
// beam (looking toward the source), under which the beam-frame horizontal
// axis appears flipped: x_beam = -x_image.  phi_field feeds the mode
// functions; phi_report is the azimuth quoted in profiles and reports,
// measured from the vertical axis toward +x_image.  The two are related by
// phi_field = phi_report + pi/2 (mod 2pi).
struct PixelCoords {
    double x_image = 0.0;
    double y_image = 0.0;
    double r = 0.0;
    double phi_field = 0.0;
    double phi_report = 0.0;
};

PixelCoords pixel_coords(const GridSpec& spec, int row, int col);

struct FieldGrid {
    GridSpec spec;
    std::vector<JonesVector> values; // row-major, rows top to bottom

    const JonesVector& at(int row, int col) const;
    JonesVector& at(int row, int col);

    // Riemann sum of the power density with cell area spacing^2.
    double total_power() const;
};

// Samples f(r, phi_field) on every pixel.
FieldGrid sample_field(const GridSpec& spec,
                       const std::function<JonesVector(double, double)>& f);

} // namespace spinorbit
