#include "quiko/qsim/unitary_oracle.hpp"

#include <stdexcept>

namespace quiko::qsim {

DenseUnitary DenseUnitary::identity(std::size_t dim) {
    DenseUnitary u;
    u.dim = dim;
    u.m.assign(dim * dim, cplx(0, 0));
    for (std::size_t i = 0; i < dim; ++i)
        u.at(i, i) = 1.0;
    return u;
}

DenseUnitary DenseUnitary::operator*(const DenseUnitary& rhs) const {
    if (dim != rhs.dim)
        throw std::invalid_argument("DenseUnitary: dimension mismatch");
    DenseUnitary out;
    out.dim = dim;
    out.m.assign(dim * dim, cplx(0, 0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            const cplx lik = at(i, k);
            if (lik == cplx(0, 0))
                continue;
            for (std::size_t j = 0; j < dim; ++j)
                out.at(i, j) += lik * rhs.at(k, j);
        }
    return out;
}

std::vector<cplx> DenseUnitary::apply(std::span<const cplx> v) const {
    if (v.size() != dim)
        throw std::invalid_argument("DenseUnitary: vector dimension mismatch");
    std::vector<cplx> out(dim, cplx(0, 0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            out[i] += at(i, j) * v[j];
    return out;
}

namespace {

bool controls_satisfied(const GateOp& op, std::size_t basis) {
    for (const Control& c : op.controls) {
        const bool bit = (basis >> c.qubit) & 1;
        if (bit != c.closed)
            return false;
    }
    return true;
}

// Column construction by index arithmetic: column j of the full gate matrix
// is what the gate does to basis state |j>.
DenseUnitary gate_matrix(const GateOp& op, int n_qubits) {
    const std::size_t dim = std::size_t(1) << n_qubits;
    DenseUnitary g;
    g.dim = dim;
    g.m.assign(dim * dim, cplx(0, 0));

    std::array<cplx, 4> m2{};
    switch (op.kind) {
    case GateKind::H: m2 = h_matrix(); break;
    case GateKind::X: m2 = x_matrix(); break;
    case GateKind::P: m2 = p_matrix(op.angles[0]); break;
    case GateKind::U3: m2 = u3_matrix(op.angles[0], op.angles[1], op.angles[2]); break;
    case GateKind::Swap: break;
    default:
        throw std::invalid_argument("brute_force_unitary: unsupported op " + to_string(op.kind));
    }

    for (std::size_t j = 0; j < dim; ++j) {
        if (!controls_satisfied(op, j)) {
            g.at(j, j) = 1.0;
            continue;
        }
        if (op.kind == GateKind::Swap) {
            const std::size_t am = std::size_t(1) << op.targets[0];
            const std::size_t bm = std::size_t(1) << op.targets[1];
            const bool ba = j & am;
            const bool bb = j & bm;
            std::size_t i = j;
            if (ba != bb)
                i = j ^ am ^ bm;
            g.at(i, j) = 1.0;
        } else {
            const std::size_t tmask = std::size_t(1) << op.targets[0];
            const int colbit = (j & tmask) ? 1 : 0;
            const std::size_t j0 = j & ~tmask;
            g.at(j0, j) = m2[0 * 2 + colbit];
            g.at(j0 | tmask, j) = m2[1 * 2 + colbit];
        }
    }
    return g;
}

} // namespace

DenseUnitary brute_force_unitary(const Circuit& circuit) {
    if (circuit.n_qubits > 6)
        throw std::invalid_argument("brute_force_unitary: supports at most 6 qubits");
    const Circuit prog = circuit.expanded();
    DenseUnitary u = DenseUnitary::identity(std::size_t(1) << prog.n_qubits);
    for (const GateOp& op : prog.ops) {
        if (op.kind == GateKind::Barrier)
            continue;
        if (!is_unitary_kind(op.kind))
            throw std::invalid_argument("brute_force_unitary: circuit contains non-unitary ops");
        u = gate_matrix(op, prog.n_qubits) * u;
    }
    return u;
}

} // namespace quiko::qsim
