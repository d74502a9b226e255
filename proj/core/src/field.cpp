#include "spinorbit/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinorbit {

double power_density(const JonesVector& v) {
    return std::norm(v.ex) + std::norm(v.ey);
}

double gaussian_profile(double r, double w0) {
    if (!(w0 > 0.0))
        throw std::invalid_argument("gaussian_profile: w0 must be > 0");
    if (!(r >= 0.0))
        throw std::invalid_argument("gaussian_profile: r must be >= 0");
    const double u = r / w0;
    return std::sqrt(8.0 / std::numbers::pi) * (r / (w0 * w0)) * std::exp(-u * u);
}

JonesVector basis_field(BasisModeIndex idx, double r, double phi_az, double w0) {
    const double g = gaussian_profile(r, w0);
    const double scalar = idx.j == 0 ? g * std::sin(phi_az) : g * std::cos(phi_az);
    JonesVector v;
    if (idx.k == 0)
        v.ey = scalar;
    else
        v.ex = scalar;
    return v;
}

JonesVector psi_from_basis(const SpinOrbitAmplitudes& amps, DeltaSign sign,
                           double r, double phi_az, double w0) {
    const SpinOrbitAmplitudes q = psi_coefficients(amps, sign);
    JonesVector out;
    for (BasisModeIndex idx : BasisModeIndex::all()) {
        const JonesVector mode = basis_field(idx, r, phi_az, w0);
        const cplx coef = q.at(idx);
        out.ex += coef * mode.ex;
        out.ey += coef * mode.ey;
    }
    return out;
}

ABSymbols ab_symbols(double theta, double phi_az) {
    const double st2 = std::sin(theta / 2.0);
    const double ct2 = std::cos(theta / 2.0);
    const double cp = std::cos(phi_az);
    const double sp = std::sin(phi_az);
    ABSymbols ab;
    ab.a_plus = st2 * st2 * cp * cp + ct2 * ct2 * sp * sp;
    ab.a_minus = st2 * st2 * cp * cp - ct2 * ct2 * sp * sp;
    ab.b = 0.5 * std::sin(theta) * std::sin(2.0 * phi_az);
    return ab;
}

JonesVector psi_parameterized(const PoincareAngles& angles, DeltaSign sign,
                              double r, double phi_az, double w0, double amplitude) {
    if (!angles.finite())
        throw std::invalid_argument("psi_parameterized: non-finite angle");
    if (!std::isfinite(amplitude) || amplitude < 0.0)
        throw std::invalid_argument("psi_parameterized: amplitude must be finite and >= 0");

    const double g = gaussian_profile(r, w0);
    const double scale = amplitude * g;

    const double ct = std::cos(angles.theta / 2.0);
    const double st = std::sin(angles.theta / 2.0);
    const double ca = std::cos(angles.alpha / 2.0);
    const double sa = std::sin(angles.alpha / 2.0);
    const double sin_p = std::sin(phi_az);
    const double cos_p = std::cos(phi_az);
    const double sin_phi = std::sin(angles.phi);
    const double cos_phi = std::cos(angles.phi);

    // Real/imaginary parts of the scalar modes psi_-+ = E G [cos(t/2) sinP
    // -+ i sin(t/2) cosP e^{i phi}].
    const double r_minus = scale * (ct * sin_p + st * cos_p * sin_phi);
    const double m_minus = -scale * st * cos_p * cos_phi;
    const double r_plus = scale * (ct * sin_p - st * cos_p * sin_phi);
    const double m_plus = scale * st * cos_p * cos_phi;

    const ABSymbols ab = ab_symbols(angles.theta, phi_az);
    const double rad_minus = std::sqrt(std::max(0.0, ab.a_plus + ab.b * sin_phi));
    const double rad_plus = std::sqrt(std::max(0.0, ab.a_plus - ab.b * sin_phi));

    const bool upper = sign == DeltaSign::positive;
    const double mag_y = scale * (upper ? rad_minus : rad_plus) * ca;
    const double mag_x = scale * (upper ? rad_plus : rad_minus) * sa;

    // Overall phase of the y component and branch-correct relative phase of
    // the x component, arg(psi_opp) - arg(psi_own); atan2(0, 0) = 0 fixes
    // nodal points deterministically (the amplitude vanishes there).
    const double r_own = upper ? r_minus : r_plus;
    const double m_own = upper ? m_minus : m_plus;
    const double r_opp = upper ? r_plus : r_minus;
    const double m_opp = upper ? m_plus : m_minus;

    const double phase_y = (r_own == 0.0 && m_own == 0.0) ? 0.0 : std::atan2(m_own, r_own);
    const double rel_num = m_opp * r_own - m_own * r_opp;
    const double rel_den = r_opp * r_own + m_opp * m_own;
    const double rel = (rel_num == 0.0 && rel_den == 0.0) ? 0.0 : std::atan2(rel_num, rel_den);

    const cplx pre = upper ? cplx(0.0, -1.0) : cplx(0.0, 1.0);

    JonesVector out;
    out.ey = std::polar(mag_y, phase_y);
    out.ex = pre * std::polar(mag_x, angles.beta + phase_y + rel);
    return out;
}

double single_input_power(const PoincareAngles& angles, DeltaSign sign,
                          double r, double phi_az, double w0, double amplitude) {
    const double g = gaussian_profile(r, w0);
    const ABSymbols ab = ab_symbols(angles.theta, phi_az);
    const double pm = sign_factor(sign);
    const double e2g2 = amplitude * amplitude * g * g;
    return 0.5 * e2g2 *
           (ab.a_plus + pm * ab.b * std::sin(angles.phi) * std::cos(angles.alpha));
}

void GridSpec::validate() const {
    if (!(half_extent > 0.0) || !std::isfinite(half_extent))
        throw std::invalid_argument("GridSpec: half_extent must be finite and > 0");
    if (samples_per_axis < 16)
        throw std::invalid_argument("GridSpec: samples_per_axis must be >= 16");
    if (!(waist_w0 > 0.0) || !std::isfinite(waist_w0))
        throw std::invalid_argument("GridSpec: waist_w0 must be finite and > 0");
}

PixelCoords pixel_coords(const GridSpec& spec, int row, int col) {
    const double d = spec.spacing();
    PixelCoords p;
    p.x_image = -spec.half_extent + col * d;
    p.y_image = spec.half_extent - row * d;
    p.r = std::hypot(p.x_image, p.y_image);
    // Camera view: the beam-frame horizontal axis is the mirrored image x.
    p.phi_field = (p.r == 0.0) ? 0.0 : std::atan2(p.y_image, -p.x_image);
    p.phi_report = (p.r == 0.0) ? 0.0 : std::atan2(p.x_image, p.y_image);
    return p;
}

const JonesVector& FieldGrid::at(int row, int col) const {
    return values[static_cast<std::size_t>(row) * spec.samples_per_axis + col];
}

JonesVector& FieldGrid::at(int row, int col) {
    return values[static_cast<std::size_t>(row) * spec.samples_per_axis + col];
}

double FieldGrid::total_power() const {
    const double cell = spec.spacing() * spec.spacing();
    double total = 0.0;
    for (const JonesVector& v : values) total += power_density(v);
    return total * cell;
}

FieldGrid sample_field(const GridSpec& spec,
                       const std::function<JonesVector(double, double)>& f) {
    spec.validate();
    FieldGrid grid;
    grid.spec = spec;
    const int n = spec.samples_per_axis;
    grid.values.resize(static_cast<std::size_t>(n) * n);
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            const PixelCoords p = pixel_coords(spec, row, col);
            grid.at(row, col) = f(p.r, p.phi_field);
        }
    }
    return grid;
}

} // namespace spinorbit
