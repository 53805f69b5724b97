#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "dlmsim/transform.hpp"

namespace dlmsim {
namespace oracle {

/// Complex amplitude vector, the quantum-theory ground truth the event-based
/// network is validated against. All functions here are pure.
struct QuantumState {
    std::vector<Complex> amplitudes;

    explicit QuantumState(std::vector<Complex> a);
};

/// Beam splitter output amplitudes (b0,b1) = (1/sqrt2)[[1,i],[i,1]] (a0,a1).
std::pair<Complex, Complex> bs_output(Complex a0, Complex a1);

/// |b0|^2 for input sqrt(p0) e^{i psi0}, sqrt(1-p0) e^{i psi1}; angles in
/// degrees. Closed form (1 + sqrt(p0(1-p0)) sin(psi0-psi1)) / 2.
double bs_probability0(double p0, double psi0_degrees, double psi1_degrees);

/// Mach-Zehnder output: BS, phase shifts (phi0, phi1) in degrees, BS.
std::pair<Complex, Complex> mzi_output(Complex a0, Complex a1, double phi0_degrees,
                                       double phi1_degrees);

/// Apply a k-qubit gate to the listed target qubits (qubit 0 = least
/// significant bit of the basis index).
QuantumState apply_gate(const QuantumState& state, const ComplexMatrix& gate,
                        const std::vector<int>& targets);

std::vector<double> probabilities(const QuantumState& state);

ComplexMatrix hadamard_gate();
ComplexMatrix cnot_gate(); // control = qubit 0, target = qubit 1

/// 4x4 matrix of the circuit (H x H) CNOT (H x H), which equals CNOT with
/// the control on qubit 1 instead of qubit 0.
ComplexMatrix hadamard_cnot_hadamard();

/// Exact output distribution of that circuit for a basis-state input.
std::vector<double> cnot_circuit_probabilities(int qubit1, int qubit2);

} // namespace oracle
} // namespace dlmsim
