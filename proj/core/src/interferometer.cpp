#include "spinorbit/interferometer.hpp"

#include <cmath>
#include <stdexcept>

namespace spinorbit {

namespace {

// Derived states are not product states; keep the scale field meaningful.
void refresh_scale(SpinOrbitAmplitudes& amps) {
    amps.amplitude = std::sqrt(amps.norm_sq());
}

} // namespace

TransferMatrix transfer_matrix(BasisModeIndex idx, double delta) {
    if (!std::isfinite(delta))
        throw std::invalid_argument("transfer_matrix: non-finite delta");

    const double s = std::sin(delta / 2.0);
    const double c = std::cos(delta / 2.0);
    const cplx i(0.0, 1.0);

    TransferMatrix u;
    if (idx.even_class()) {
        u.parity_class = ParityClass::even;
        u.m = {i * s, i * c, i * c, -i * s};
    } else {
        u.parity_class = ParityClass::odd;
        u.m = {cplx(c), cplx(s), cplx(s), cplx(-c)};
    }
    return u;
}

PortPair propagate(const PortPair& inputs, double delta) {
    PortPair out = inputs;
    for (BasisModeIndex idx : BasisModeIndex::all()) {
        const TransferMatrix u = transfer_matrix(idx, delta);
        const cplx in_a = inputs.first.at(idx);
        const cplx in_b = inputs.second.at(idx);
        out.first.at(idx) = u.at(0, 0) * in_a + u.at(0, 1) * in_b;
        out.second.at(idx) = u.at(1, 0) * in_a + u.at(1, 1) * in_b;
    }
    refresh_scale(out.first);
    refresh_scale(out.second);
    return out;
}

PortPair classical_dual_output(const PoincareAngles& angles, double amplitude,
                               double delta) {
    const SpinOrbitAmplitudes amps = product_amplitudes(angles, amplitude);
    const double s = std::sin(delta / 2.0);
    const double c = std::cos(delta / 2.0);
    const cplx i(0.0, 1.0);

    // Port c: i (c+s) Psi-, port d: i (c-s) Psi+.
    SpinOrbitAmplitudes psi_minus = psi_coefficients(amps, DeltaSign::positive);
    SpinOrbitAmplitudes psi_plus = psi_coefficients(amps, DeltaSign::negative);

    PortPair out;
    out.first = psi_minus;
    out.second = psi_plus;
    const cplx fc = i * (c + s);
    const cplx fd = i * (c - s);
    for (BasisModeIndex idx : BasisModeIndex::all()) {
        out.first.at(idx) *= fc;
        out.second.at(idx) *= fd;
    }
    refresh_scale(out.first);
    refresh_scale(out.second);
    return out;
}

PortPair single_input_output(InputPort port, const PoincareAngles& angles,
                             double amplitude, DeltaSign sign) {
    const SpinOrbitAmplitudes amps = product_amplitudes(angles, amplitude);
    const SpinOrbitAmplitudes psi = psi_coefficients(amps, sign);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    const double pm = sign_factor(sign);

    // Port a in: (c, d) = (+-1, +1); port b in: (c, d) = (+1, -+1).
    cplx fc, fd;
    if (port == InputPort::a) {
        fc = i * inv_sqrt2 * pm;
        fd = i * inv_sqrt2;
    } else {
        fc = i * inv_sqrt2;
        fd = i * inv_sqrt2 * (-pm);
    }

    PortPair out;
    out.first = psi;
    out.second = psi;
    for (BasisModeIndex idx : BasisModeIndex::all()) {
        out.first.at(idx) *= fc;
        out.second.at(idx) *= fd;
    }
    refresh_scale(out.first);
    refresh_scale(out.second);
    return out;
}

} // namespace spinorbit
