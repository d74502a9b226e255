// Four-port asymmetric Mach-Zehnder transfer model.
//
// The device couples ports (a, b) to (c, d) with one extra mirror in one
// arm, so the 2x2 transfer matrix acting on each basis mode depends only on
// the mode's reflection parity.  For internal phase delta:
//
//   even (j+k):  i [ sin(d/2)  cos(d/2) ]      odd:  [ cos(d/2)  sin(d/2) ]
//                  [ cos(d/2) -sin(d/2) ]            [ sin(d/2) -cos(d/2) ]
//
// Phase convention: matrices are used exactly as written above, so the
// closed-form outputs below carry the common reflection factor i that a
// textbook presentation would silently drop.  Global phases are physical
// here (they matter when superposing the two input ports), so all
// comparisons are exact complex equality, not phase-insensitive.

#pragma once

#include <array>

#include "spinorbit/modes.hpp"

namespace spinorbit {

enum class ParityClass { even, odd };

struct TransferMatrix {
    std::array<cplx, 4> m{}; // row-major 2x2
    ParityClass parity_class = ParityClass::even;

    cplx at(int row, int col) const { return m[row * 2 + col]; }
};

// Transfer matrix for the parity class of `idx` at internal phase `delta`.
TransferMatrix transfer_matrix(BasisModeIndex idx, double delta);

// Amplitudes at a pair of ports: (a, b) on the input side, (c, d) on the
// output side.
struct PortPair {
    SpinOrbitAmplitudes first;
    SpinOrbitAmplitudes second;

    double total_power() const { return first.norm_sq() + second.norm_sq(); }
};

// Applies the per-mode transfer matrices to all four (j,k) amplitude pairs.
// Unitary, so total power is conserved.
PortPair propagate(const PortPair& inputs, double delta);

// Both inputs fed with the same product state and amplitude E.  Output c
// carries i E (cos(d/2)+sin(d/2)) Psi-, output d carries
// i E (cos(d/2)-sin(d/2)) Psi+; agrees exactly with propagate() applied to
// the duplicated amplitudes.  At delta = +pi/2 all power exits port c.
PortPair classical_dual_output(const PoincareAngles& angles, double amplitude,
                               double delta);

enum class InputPort { a, b };

// Single beam into one input port with delta fixed at +-pi/2.  Both outputs
// carry the same collective mode Psi-/Psi+ with magnitude E/sqrt(2):
//   port a: (c, d) = (+-1, +1) * (i/sqrt2) E Psi_sign
//   port b: (c, d) = (+1, -+1) * (i/sqrt2) E Psi_sign
// Superposing the port-a and port-b results reproduces the dual-input
// output at the same delta.
PortPair single_input_output(InputPort port, const PoincareAngles& angles,
                             double amplitude, DeltaSign sign);

} // namespace spinorbit
