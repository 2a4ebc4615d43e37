#include "quiko/qsim/qft.hpp"

#include "quiko/qsim/simulator.hpp"

#include <stdexcept>

namespace quiko::qsim {

void apply_qft(StateVector& state, std::span<const int> qubits, bool inverse) {
    if (qubits.empty())
        throw std::invalid_argument("apply_qft: empty qubit range");
    for (const GateOp& op : qft_block_ops(qubits, inverse))
        apply_unitary_op(state, op);
}

Circuit qpe_circuit(double phase_gate_angle, int n_counting) {
    if (n_counting < 1)
        throw std::invalid_argument("qpe_circuit: need at least one counting qubit");
    Circuit c(n_counting + 1, n_counting);
    const int aux = n_counting;
    for (int q = 0; q < n_counting; ++q)
        c.h(q);
    c.x(aux);
    for (int j = 0; j < n_counting; ++j) {
        const std::uint64_t reps = std::uint64_t(1) << j;
        for (std::uint64_t r = 0; r < reps; ++r)
            c.p(phase_gate_angle, aux, {{j, true}});
    }
    std::vector<int> counting(n_counting);
    for (int q = 0; q < n_counting; ++q)
        counting[q] = q;
    c.inv_qft(counting);
    for (int q = 0; q < n_counting; ++q)
        c.measure(q, q);
    return c;
}

} // namespace quiko::qsim
