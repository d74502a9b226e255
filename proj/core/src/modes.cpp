#include "spinorbit/modes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinorbit {

namespace {

constexpr double kPi = std::numbers::pi;

// Wraps x into [-pi, pi).
double wrap_pm_pi(double x) {
    double y = std::fmod(x + kPi, 2.0 * kPi);
    if (y < 0.0) y += 2.0 * kPi;
    return y - kPi;
}

// Folds a polar angle into [0, pi], compensating with a +pi shift of the
// paired azimuthal phase (the state picks up at most a global sign).
void fold_polar(double& polar, double& azimuthal) {
    double t = std::fmod(polar, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    if (t > kPi) {
        t = 2.0 * kPi - t;
        azimuthal += kPi;
    }
    polar = t;
}

} // namespace

bool PoincareAngles::finite() const {
    return std::isfinite(theta) && std::isfinite(phi) && std::isfinite(alpha) &&
           std::isfinite(beta);
}

PoincareAngles PoincareAngles::canonical() const {
    PoincareAngles c = *this;
    fold_polar(c.theta, c.phi);
    fold_polar(c.alpha, c.beta);
    c.phi = wrap_pm_pi(c.phi);
    c.beta = wrap_pm_pi(c.beta);
    return c;
}

int parity_sign(BasisModeIndex idx) {
    return (idx.j + idx.k) % 2 == 0 ? +1 : -1;
}

cplx SpinOrbitAmplitudes::at(BasisModeIndex idx) const {
    if (idx.j == 0) return idx.k == 0 ? e00 : e01;
    return idx.k == 0 ? e10 : e11;
}

cplx& SpinOrbitAmplitudes::at(BasisModeIndex idx) {
    if (idx.j == 0) return idx.k == 0 ? e00 : e01;
    return idx.k == 0 ? e10 : e11;
}

double SpinOrbitAmplitudes::norm_sq() const {
    return std::norm(e00) + std::norm(e11) + std::norm(e10) + std::norm(e01);
}

cplx SpinOrbitAmplitudes::separability_witness() const {
    return e00 * e11 - e10 * e01;
}

SpinOrbitAmplitudes product_amplitudes(const PoincareAngles& angles, double amplitude) {
    if (!angles.finite())
        throw std::invalid_argument("product_amplitudes: non-finite angle");
    if (!std::isfinite(amplitude) || amplitude < 0.0)
        throw std::invalid_argument("product_amplitudes: amplitude must be finite and >= 0");

    const double ct = std::cos(angles.theta / 2.0);
    const double st = std::sin(angles.theta / 2.0);
    const double ca = std::cos(angles.alpha / 2.0);
    const double sa = std::sin(angles.alpha / 2.0);
    const cplx orbital_phase = std::polar(1.0, angles.phi);
    const cplx spin_phase = std::polar(1.0, angles.beta);

    SpinOrbitAmplitudes out;
    out.e00 = amplitude * ct * ca;
    out.e11 = amplitude * st * sa * orbital_phase * spin_phase;
    out.e10 = amplitude * st * ca * orbital_phase;
    out.e01 = amplitude * ct * sa * spin_phase;
    out.amplitude = amplitude;
    return out;
}

bool physically_equal(const SpinOrbitAmplitudes& a, const SpinOrbitAmplitudes& b,
                      double tol) {
    const cplx av[4] = {a.e00, a.e11, a.e10, a.e01};
    const cplx bv[4] = {b.e00, b.e11, b.e10, b.e01};

    // Reference entry: largest magnitude, first wins ties.
    int ref = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(av[i]) > std::abs(av[ref])) ref = i;

    if (std::abs(av[ref]) < tol) {
        // Zero state: equal only to another zero state.
        for (const cplx& v : bv)
            if (std::abs(v) > tol) return false;
        return true;
    }
    if (std::abs(bv[ref]) < tol) return false;

    const cplx factor = av[ref] / bv[ref];
    for (int i = 0; i < 4; ++i)
        if (std::abs(av[i] - factor * bv[i]) > tol * std::abs(av[ref])) return false;
    return true;
}

SpinOrbitAmplitudes psi_coefficients(const SpinOrbitAmplitudes& amps, DeltaSign sign) {
    const cplx factor = sign == DeltaSign::positive ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
    SpinOrbitAmplitudes out = amps;
    out.e10 = factor * amps.e10;
    out.e01 = factor * amps.e01;
    return out;
}

} // namespace spinorbit
