// Jones-calculus analysis layer: linear polarizer projection, output
// retarder, the closed-form polarized power of the balanced scenario, and
// Stokes-parameter reduction to polarization ellipses for map rendering.

#pragma once

#include <array>

#include "spinorbit/field.hpp"

namespace spinorbit {

// Linear polarizer with transmission axis at angle gamma from the vertical,
// anticlockwise as viewed from the beam source.  Periodic in pi.
struct PolarizerSetting {
    double gamma = 0.0;

    // Wraps gamma into [0, pi).
    static PolarizerSetting canonical(double gamma);
};

// [[sin^2 G, sin G cos G], [sin G cos G, cos^2 G]] acting on (ex, ey):
// a symmetric, idempotent, trace-1 projector onto the transmission axis.
std::array<double, 4> polarizer_matrix(double gamma);

JonesVector apply_polarizer(const JonesVector& v, double gamma);
FieldGrid apply_polarizer(const FieldGrid& grid, double gamma);

// Birefringent retarder: ex -> e^{i beta} ex, ey unchanged.  Equivalent to
// adding beta to the input-state retardance, since the collective modes
// carry beta only in the relative x/y phase.
JonesVector apply_retarder(const JonesVector& v, double beta);
FieldGrid apply_retarder(const FieldGrid& grid, double beta);

// Polarized power density of the balanced scenario (theta = pi/2, phi = pi,
// alpha = pi/2, single input at port a, delta = +-pi/2), analyzed at
// polarizer angle gamma with total retardance beta:
//
//   P = (1/8) E^2 G(r)^2 (1 -+ sin(2 gamma) sin(beta +- 2 phi_az))
//
// in the beam-frame azimuth (equivalently 1 +- sin 2G sin(beta +- 2 phi) in
// the reported camera-view azimuth).  The prefactor 1/8 makes this equal,
// pixel for pixel, to apply_polarizer(apply_retarder(port-c field)).
double polarized_power(double gamma, double beta, DeltaSign sign,
                       double r, double phi_az, double w0, double amplitude);

// orientation: major-axis angle from the horizontal axis, in [0, pi);
// ellipticity: signed tangent of the ellipticity angle, in [-1, 1]
// (+-1 circular, 0 linear); intensity: S0.  Zero-intensity pixels report
// orientation = ellipticity = 0.
struct PolarizationEllipse {
    double orientation = 0.0;
    double ellipticity = 0.0;
    double intensity = 0.0;
};

PolarizationEllipse ellipse_from_jones(const JonesVector& v);

struct EllipseMap {
    GridSpec spec;
    std::vector<PolarizationEllipse> values; // row-major
};

EllipseMap ellipse_map(const FieldGrid& grid);

} // namespace spinorbit
