#pragma once

#include "quiko/qsim/circuit.hpp"
#include "quiko/qsim/state_vector.hpp"

#include <span>

namespace quiko::qsim {

// In-place QFT over the given qubits (LSB-first: qubits[0] is the least
// significant bit of the transformed sub-index). Forward maps |x> to
// (1/sqrt(N)) sum_y w^{xy} |y>; inverse undoes it.
void apply_qft(StateVector& state, std::span<const int> qubits_lsb_first, bool inverse);

// Phase-estimation circuit for P(phase_gate_angle): counting qubits
// q0..q_{n-1} (q0 = least significant estimate bit), auxiliary qubit q_n
// prepared with X, 2^j controlled-P repetitions per counting qubit j,
// inverse QFT, then counting qubits measured to classical bits 0..n-1.
// Exact outcome concentrates on round(2^n * theta) mod 2^n for
// phase_gate_angle = 2 pi theta.
Circuit qpe_circuit(double phase_gate_angle, int n_counting);

} // namespace quiko::qsim
