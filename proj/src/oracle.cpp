#include "dlmsim/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace dlmsim {
namespace oracle {

namespace {

constexpr double kNormTol = 1e-12;

double deg2rad(double deg) { return deg * M_PI / 180.0; }

void check_pair_normalized(Complex a0, Complex a1) {
    if (std::abs(std::norm(a0) + std::norm(a1) - 1.0) > 1e-9)
        throw std::invalid_argument("oracle: input amplitudes are not normalized");
}

} // namespace

QuantumState::QuantumState(std::vector<Complex> a) : amplitudes(std::move(a)) {
    double total = 0.0;
    for (const auto& amp : amplitudes) total += std::norm(amp);
    if (std::abs(total - 1.0) > kNormTol)
        throw std::invalid_argument("QuantumState: amplitudes are not normalized");
}

std::pair<Complex, Complex> bs_output(Complex a0, Complex a1) {
    check_pair_normalized(a0, a1);
    const double h = std::sqrt(0.5);
    const Complex i{0.0, 1.0};
    return {h * (a0 + i * a1), h * (i * a0 + a1)};
}

double bs_probability0(double p0, double psi0_degrees, double psi1_degrees) {
    // |b0|^2 expanded from the beam-splitter matrix: the interference term is
    // sqrt(p0 p1) sin(psi0 - psi1) about 1/2 (curve amplitude 0.433 at p0 = 1/4).
    return 0.5 + std::sqrt(p0 * (1.0 - p0)) *
                     std::sin(deg2rad(psi0_degrees) - deg2rad(psi1_degrees));
}

std::pair<Complex, Complex> mzi_output(Complex a0, Complex a1, double phi0_degrees,
                                       double phi1_degrees) {
    check_pair_normalized(a0, a1);
    const Complex i{0.0, 1.0};
    Complex c0 = std::exp(i * deg2rad(phi0_degrees));
    Complex c1 = std::exp(i * deg2rad(phi1_degrees));
    auto [m0, m1] = bs_output(a0, a1);
    return bs_output(c0 * m0, c1 * m1);
}

QuantumState apply_gate(const QuantumState& state, const ComplexMatrix& gate,
                        const std::vector<int>& targets) {
    std::size_t dim = state.amplitudes.size();
    std::size_t gate_dim = gate.size();
    if (!is_unitary(gate, 1e-10)) throw std::invalid_argument("apply_gate: gate is not unitary");
    if (gate_dim != (1u << targets.size()))
        throw std::invalid_argument("apply_gate: gate size does not match target count");
    for (int t : targets)
        if (t < 0 || (1u << t) >= dim)
            throw std::invalid_argument("apply_gate: target qubit out of range");

    std::vector<Complex> out(dim, 0.0);
    for (std::size_t basis = 0; basis < dim; ++basis) {
        // Row index within the gate from the target-qubit bits of `basis`.
        std::size_t row = 0;
        for (std::size_t t = 0; t < targets.size(); ++t)
            row |= ((basis >> targets[t]) & 1u) << t;
        for (std::size_t col = 0; col < gate_dim; ++col) {
            std::size_t src = basis;
            for (std::size_t t = 0; t < targets.size(); ++t) {
                std::size_t bit = (col >> t) & 1u;
                src = (src & ~(1u << targets[t])) | (bit << targets[t]);
            }
            out[basis] += gate[row][col] * state.amplitudes[src];
        }
    }
    return QuantumState(std::move(out));
}

std::vector<double> probabilities(const QuantumState& state) {
    std::vector<double> p(state.amplitudes.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(state.amplitudes[k]);
    return p;
}

ComplexMatrix hadamard_gate() {
    const double h = std::sqrt(0.5);
    return {{h, h}, {h, -h}};
}

ComplexMatrix cnot_gate() {
    // Basis order |q1 q0>: control q0 flips q1, i.e. |01> <-> |11>.
    return {{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
}

ComplexMatrix hadamard_cnot_hadamard() {
    ComplexMatrix hh(4, std::vector<Complex>(4, 0.0));
    ComplexMatrix h = hadamard_gate();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            hh[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                h[static_cast<std::size_t>(r & 1)][static_cast<std::size_t>(c & 1)] *
                h[static_cast<std::size_t>(r >> 1)][static_cast<std::size_t>(c >> 1)];
    return multiply(hh, multiply(cnot_gate(), hh));
}

std::vector<double> cnot_circuit_probabilities(int qubit1, int qubit2) {
    if ((qubit1 != 0 && qubit1 != 1) || (qubit2 != 0 && qubit2 != 1))
        throw std::invalid_argument("cnot_circuit_probabilities: qubit values must be 0 or 1");
    std::vector<Complex> amps(4, 0.0);
    amps[static_cast<std::size_t>(qubit1 + 2 * qubit2)] = 1.0;
    QuantumState in(std::move(amps));
    QuantumState out = apply_gate(in, hadamard_cnot_hadamard(), {0, 1});
    return probabilities(out);
}

} // namespace oracle
} // namespace dlmsim
