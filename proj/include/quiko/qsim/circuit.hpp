#pragma once

#include "quiko/qsim/gate.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace quiko::qsim {

// Ordered gate/measure/reset program over a quantum and a classical register.
// Classical bitstrings render MSB-first: classical bit (n_clbits-1) is the
// leftmost character. Builders map qubit i to classical bit i.
struct Circuit {
    int n_qubits = 0;
    int n_clbits = 0;
    std::vector<GateOp> ops;

    Circuit() = default;
    Circuit(int nq, int nc) : n_qubits(nq), n_clbits(nc) {}

    Circuit& add(GateOp op); // validates indices/arity, throws std::invalid_argument

    Circuit& h(int q) { return add({GateKind::H, {q}, {}, {}, {}}); }
    Circuit& x(int q) { return add({GateKind::X, {q}, {}, {}, {}}); }
    Circuit& p(double lambda, int q, std::vector<Control> ctrls = {}) {
        return add({GateKind::P, {q}, std::move(ctrls), {}, {lambda}});
    }
    Circuit& u3(double theta, double phi, double lambda, int q, std::vector<Control> ctrls = {}) {
        return add({GateKind::U3, {q}, std::move(ctrls), {}, {theta, phi, lambda}});
    }
    Circuit& ry(int q, double theta) { return u3(theta, 0.0, 0.0, q); }
    Circuit& swap_gate(int qa, int qb, std::vector<Control> ctrls = {}) {
        return add({GateKind::Swap, {qa, qb}, std::move(ctrls), {}, {}});
    }
    Circuit& cx(int control, int target) {
        return add({GateKind::X, {target}, {{control, true}}, {}, {}});
    }
    // QFT over `qubits` given LSB-first: qubits[0] is the least significant
    // bit of the transformed index.
    Circuit& qft(std::vector<int> qubits) {
        return add({GateKind::Qft, std::move(qubits), {}, {}, {}});
    }
    Circuit& inv_qft(std::vector<int> qubits) {
        return add({GateKind::InvQft, std::move(qubits), {}, {}, {}});
    }
    Circuit& measure(int q, int clbit) {
        return add({GateKind::Measure, {q}, {}, {clbit}, {}});
    }
    Circuit& reset(int q) { return add({GateKind::Reset, {q}, {}, {}, {}}); }
    Circuit& barrier() { return add({GateKind::Barrier, {}, {}, {}, {}}); }

    // QFT blocks replaced by their H / controlled-P / SWAP expansion.
    Circuit expanded() const;

    bool has_measurement() const;

    std::string to_json_string(int indent = -1) const;
    static Circuit from_json_string(const std::string& text);
};

// Primitive expansion of one QFT / inverse-QFT block.
std::vector<GateOp> qft_block_ops(std::span<const int> qubits_lsb_first, bool inverse);

// Two-qubit-equivalent cost after decomposition: single-qubit gate = 1,
// singly-controlled gate = 2, and a gate with c >= 2 controls costs
// 2 * N(c) with N(1) = 1, N(c) = 3 N(c-1) + 2 (recursive V / CX / V+
// construction, no ancillas). SWAP counts as 3 CX. Measure/Reset/Barrier
// are free. QFT blocks are expanded first.
std::uint64_t decomposition_cost(const Circuit& circuit);

} // namespace quiko::qsim
