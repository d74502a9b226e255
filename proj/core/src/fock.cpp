#include "spinorbit/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace spinorbit {

namespace {

constexpr double kPruneThreshold = 1e-15;
constexpr double kNormTolerance = 1e-9;

bool is_input_port(Port p) { return p == Port::a || p == Port::b; }

// Substitution rule for one input operator: the pair of (output label code,
// coefficient) terms it expands into.
using Expansion = std::array<std::pair<int, cplx>, 2>;

Expansion expand_label(const ModeLabel& label, double s, double c) {
    const int mode = label.idx.flat();
    const int code_c = static_cast<int>(Port::c) * 4 + mode;
    const int code_d = static_cast<int>(Port::d) * 4 + mode;
    const cplx i(0.0, 1.0);

    if (label.idx.even_class()) {
        if (label.port == Port::a) return {{{code_c, i * s}, {code_d, i * c}}};
        return {{{code_c, i * c}, {code_d, -i * s}}};
    }
    if (label.port == Port::a) return {{{code_c, cplx(c)}, {code_d, cplx(s)}}};
    return {{{code_c, cplx(s)}, {code_d, cplx(-c)}}};
}

} // namespace

ModeLabel ModeLabel::decode(int code) {
    ModeLabel l;
    l.port = static_cast<Port>(code / 4);
    l.idx = BasisModeIndex{(code % 4) / 2, code % 2};
    return l;
}

OperatorMonomial OperatorMonomial::make(ModeLabel l1, ModeLabel l2) {
    OperatorMonomial m;
    m.lo = std::min(l1.encode(), l2.encode());
    m.hi = std::max(l1.encode(), l2.encode());
    return m;
}

void OperatorPolynomial::add_term(const OperatorMonomial& mono, cplx coef) {
    auto [it, inserted] = terms_.try_emplace(mono, coef);
    if (!inserted) it->second += coef;
    if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

void OperatorPolynomial::prune(double threshold) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < threshold)
            it = terms_.erase(it);
        else
            ++it;
    }
}

cplx OperatorPolynomial::coefficient(const OperatorMonomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? cplx{} : it->second;
}

double OperatorPolynomial::fock_norm_sq() const {
    double total = 0.0;
    for (const auto& [mono, coef] : terms_)
        total += std::norm(coef) * (mono.repeated() ? 2.0 : 1.0);
    return total;
}

OperatorPolynomial OperatorPolynomial::normalized() const {
    const double norm = std::sqrt(fock_norm_sq());
    if (norm <= 0.0)
        throw std::invalid_argument("OperatorPolynomial::normalized: zero state");
    OperatorPolynomial out = *this;
    for (auto& [mono, coef] : out.terms_) coef /= norm;
    return out;
}

bool OperatorPolynomial::all_input_labels() const {
    for (const auto& [mono, coef] : terms_)
        if (!is_input_port(mono.first().port) || !is_input_port(mono.second().port))
            return false;
    return true;
}

bool OperatorPolynomial::all_output_labels() const {
    for (const auto& [mono, coef] : terms_)
        if (is_input_port(mono.first().port) || is_input_port(mono.second().port))
            return false;
    return true;
}

OperatorPolynomial biphoton_input(const SpinOrbitAmplitudes& amps) {
    if (std::abs(amps.norm_sq() - 1.0) > kNormTolerance)
        throw std::invalid_argument("biphoton_input: amplitudes must be normalized");

    OperatorPolynomial poly;
    for (BasisModeIndex m : BasisModeIndex::all()) {
        for (BasisModeIndex n : BasisModeIndex::all()) {
            const cplx coef = amps.at(m) * amps.at(n);
            if (coef == cplx{}) continue;
            poly.add_term(OperatorMonomial::make(ModeLabel{Port::a, m},
                                                 ModeLabel{Port::b, n}),
                          coef);
        }
    }
    return poly;
}

OperatorPolynomial substitute_output_operators(const OperatorPolynomial& poly,
                                               double delta) {
    if (!poly.all_input_labels())
        throw std::invalid_argument(
            "substitute_output_operators: polynomial holds output-port labels");

    const double s = std::sin(delta / 2.0);
    const double c = std::cos(delta / 2.0);

    OperatorPolynomial out;
    for (const auto& [mono, coef] : poly.terms()) {
        const Expansion t1 = expand_label(mono.first(), s, c);
        const Expansion t2 = expand_label(mono.second(), s, c);
        for (const auto& [code1, f1] : t1) {
            for (const auto& [code2, f2] : t2) {
                out.add_term(OperatorMonomial::make(ModeLabel::decode(code1),
                                                    ModeLabel::decode(code2)),
                             coef * f1 * f2);
            }
        }
    }
    out.prune();
    return out;
}

double coincidence_probability(const OperatorPolynomial& poly) {
    const double norm_sq = poly.fock_norm_sq();
    if (norm_sq <= 0.0)
        throw std::invalid_argument("coincidence_probability: zero state");

    double mixed = 0.0;
    for (const auto& [mono, coef] : poly.terms()) {
        if (mono.first().port != mono.second().port) mixed += std::norm(coef);
    }
    return mixed / norm_sq;
}

double bunching_probability(const OperatorPolynomial& poly) {
    const double norm_sq = poly.fock_norm_sq();
    if (norm_sq <= 0.0)
        throw std::invalid_argument("bunching_probability: zero state");

    double same = 0.0;
    for (const auto& [mono, coef] : poly.terms()) {
        if (mono.first().port == mono.second().port)
            same += std::norm(coef) * (mono.repeated() ? 2.0 : 1.0);
    }
    return same / norm_sq;
}

OperatorPolynomial hom_output_state(const SpinOrbitAmplitudes& amps, DeltaSign sign) {
    if (std::abs(amps.norm_sq() - 1.0) > kNormTolerance)
        throw std::invalid_argument("hom_output_state: amplitudes must be normalized");

    const SpinOrbitAmplitudes q = psi_coefficients(amps, sign);

    OperatorPolynomial poly;
    auto add_square = [&](Port port, cplx overall) {
        const auto modes = BasisModeIndex::all();
        for (std::size_t i = 0; i < modes.size(); ++i) {
            for (std::size_t j = i; j < modes.size(); ++j) {
                cplx coef = q.at(modes[i]) * q.at(modes[j]) * overall;
                if (i != j) coef *= 2.0; // cross terms appear twice in the square
                if (coef == cplx{}) continue;
                poly.add_term(OperatorMonomial::make(ModeLabel{port, modes[i]},
                                                     ModeLabel{port, modes[j]}),
                              coef);
            }
        }
    };
    add_square(Port::c, cplx(1.0));
    add_square(Port::d, cplx(-1.0));
    poly.prune();
    return poly;
}

double max_aligned_difference(const OperatorPolynomial& p, const OperatorPolynomial& q) {
    // Both sides are scaled by their coefficient at one shared reference
    // monomial: the largest-magnitude term of p (first in canonical order on
    // ties).  Sharing the monomial keeps the alignment stable when several
    // coefficients tie in magnitude.
    if (p.empty() && q.empty()) return 0.0;

    const OperatorPolynomial::TermMap::value_type* ref = nullptr;
    for (const auto& term : p.terms()) {
        if (ref == nullptr || std::abs(term.second) > std::abs(ref->second)) ref = &term;
    }
    if (ref == nullptr) {
        double largest = 0.0;
        for (const auto& [mono, coef] : q.terms()) largest = std::max(largest, std::abs(coef));
        return largest;
    }

    const cplx rp = ref->second;
    const cplx rq = q.coefficient(ref->first);
    if (std::abs(rq) < kPruneThreshold)
        return std::numeric_limits<double>::infinity();

    double max_diff = 0.0;
    auto visit = [&](const OperatorPolynomial& base) {
        for (const auto& [mono, coef] : base.terms()) {
            const cplx d = p.coefficient(mono) / rp - q.coefficient(mono) / rq;
            max_diff = std::max(max_diff, std::abs(d));
        }
    };
    visit(p);
    visit(q);
    return max_diff;
}

} // namespace spinorbit
