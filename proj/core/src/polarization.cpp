#include "spinorbit/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spinorbit {

namespace {
constexpr double kPi = std::numbers::pi;
}

PolarizerSetting PolarizerSetting::canonical(double gamma) {
    double g = std::fmod(gamma, kPi);
    if (g < 0.0) g += kPi;
    return PolarizerSetting{g};
}

std::array<double, 4> polarizer_matrix(double gamma) {
    const double s = std::sin(gamma);
    const double c = std::cos(gamma);
    return {s * s, s * c, s * c, c * c};
}

JonesVector apply_polarizer(const JonesVector& v, double gamma) {
    const auto m = polarizer_matrix(gamma);
    JonesVector out;
    out.ex = m[0] * v.ex + m[1] * v.ey;
    out.ey = m[2] * v.ex + m[3] * v.ey;
    return out;
}

FieldGrid apply_polarizer(const FieldGrid& grid, double gamma) {
    FieldGrid out = grid;
    for (JonesVector& v : out.values) v = apply_polarizer(v, gamma);
    return out;
}

JonesVector apply_retarder(const JonesVector& v, double beta) {
    JonesVector out = v;
    out.ex *= std::polar(1.0, beta);
    return out;
}

FieldGrid apply_retarder(const FieldGrid& grid, double beta) {
    FieldGrid out = grid;
    for (JonesVector& v : out.values) v = apply_retarder(v, beta);
    return out;
}

double polarized_power(double gamma, double beta, DeltaSign sign,
                       double r, double phi_az, double w0, double amplitude) {
    const double g = gaussian_profile(r, w0);
    const double pm = sign_factor(sign);
    const double modulation = std::sin(2.0 * gamma) * std::sin(beta + pm * 2.0 * phi_az);
    return 0.125 * amplitude * amplitude * g * g * (1.0 - pm * modulation);
}

PolarizationEllipse ellipse_from_jones(const JonesVector& v) {
    const double s0 = std::norm(v.ex) + std::norm(v.ey);
    PolarizationEllipse e;
    e.intensity = s0;
    if (s0 <= 0.0) return e;

    const double s1 = std::norm(v.ex) - std::norm(v.ey);
    const cplx cross = std::conj(v.ex) * v.ey;
    const double s2 = 2.0 * cross.real();
    const double s3 = 2.0 * cross.imag();

    double orientation = 0.5 * std::atan2(s2, s1);
    if (orientation < 0.0) orientation += kPi; // canonical range [0, pi)
    if (orientation >= kPi) orientation -= kPi;
    e.orientation = orientation;

    const double ratio = std::clamp(s3 / s0, -1.0, 1.0);
    e.ellipticity = std::tan(0.5 * std::asin(ratio));
    return e;
}

EllipseMap ellipse_map(const FieldGrid& grid) {
    EllipseMap map;
    map.spec = grid.spec;
    map.values.reserve(grid.values.size());
    for (const JonesVector& v : grid.values) map.values.push_back(ellipse_from_jones(v));
    return map;
}

} // namespace spinorbit
