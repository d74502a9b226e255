// Symbolic two-photon Fock layer.
//
// States are degree-2 polynomials in the eight creation operators of a port
// pair (4 basis modes per port), stored sparsely as canonical monomials with
// complex coefficients.  The squared Fock norm weights a repeated-label
// monomial (p+)^2 by 2 and a mixed monomial p+ q+ by 1, matching the bosonic
// commutation relations, so coincidence and bunching probabilities of a
// normalized state sum to one.

#pragma once

#include <compare>
#include <map>

#include "spinorbit/modes.hpp"

namespace spinorbit {

enum class Port { a, b, c, d };

struct ModeLabel {
    Port port = Port::a;
    BasisModeIndex idx{};

    // 0..15: 4*port + flat mode index
    int encode() const { return static_cast<int>(port) * 4 + idx.flat(); }
    static ModeLabel decode(int code);

    friend bool operator==(const ModeLabel&, const ModeLabel&) = default;
};

// Unordered pair of labels; creation operators commute, so the stored order
// is canonical (lo <= hi).
struct OperatorMonomial {
    int lo = 0;
    int hi = 0;

    static OperatorMonomial make(ModeLabel l1, ModeLabel l2);
    bool repeated() const { return lo == hi; }
    ModeLabel first() const { return ModeLabel::decode(lo); }
    ModeLabel second() const { return ModeLabel::decode(hi); }

    auto operator<=>(const OperatorMonomial&) const = default;
};

class OperatorPolynomial {
public:
    using TermMap = std::map<OperatorMonomial, cplx>;

    OperatorPolynomial() = default;

    // Accumulates and drops coefficients below the pruning threshold.
    void add_term(const OperatorMonomial& mono, cplx coef);
    void prune(double threshold = 1e-15);

    cplx coefficient(const OperatorMonomial& mono) const;
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    // Sum of |coef|^2 * mu with mu = 2 for repeated-label monomials.
    double fock_norm_sq() const;
    OperatorPolynomial normalized() const;

    // True when every label lies on the given side of the device.
    bool all_input_labels() const;
    bool all_output_labels() const;

private:
    TermMap terms_;
};

// (sum_jk e_jk a+_jk)(sum_jk e_jk b+_jk) |vac>, expanded.  Requires the
// coefficient norm to be 1 (the quantum layer is dimensionless); throws
// std::invalid_argument otherwise.
OperatorPolynomial biphoton_input(const SpinOrbitAmplitudes& amps);

// Replaces every a+/b+ by its delta-dependent combination of c+/d+:
//   even class:  a+ = i(s c+ + c d+),  b+ = i(c c+ - s d+)
//   odd class:   a+ =   c c+ + s d+,   b+ =   s c+ - c d+
// with s = sin(delta/2), c = cos(delta/2).  Preserves the Fock norm.
// Throws std::invalid_argument if the polynomial already holds output labels.
OperatorPolynomial substitute_output_operators(const OperatorPolynomial& poly,
                                               double delta);

// Probability that the two photons exit different output ports / the same
// output port.  Both divide by the squared Fock norm; they sum to one.
// Throw std::invalid_argument on a zero polynomial.
double coincidence_probability(const OperatorPolynomial& poly);
double bunching_probability(const OperatorPolynomial& poly);

// Closed-form bunched state ((Psi+_c)^2 - (Psi+_d)^2)|vac> built from the
// squared collective operators, where Psi+_p = sum_m q_m p+_m with
// q = psi_coefficients(amps, sign).  Equal to the substitution pipeline at
// delta = +-pi/2 up to one global factor.  Contains no c-d cross terms, so
// its coincidence probability is exactly zero.
OperatorPolynomial hom_output_state(const SpinOrbitAmplitudes& amps, DeltaSign sign);

// Largest per-coefficient difference after scaling each polynomial by its
// own largest-magnitude coefficient (ties broken by canonical monomial
// order).  This makes the comparison insensitive to one global complex
// factor.  Zero polynomials compare equal to each other only.
double max_aligned_difference(const OperatorPolynomial& p, const OperatorPolynomial& q);

} // namespace spinorbit
