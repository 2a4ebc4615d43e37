#pragma once

#include "quiko/qsim/circuit.hpp"
#include "quiko/qsim/state_vector.hpp"

#include <vector>

namespace quiko::qsim {

struct DenseUnitary {
    std::size_t dim = 0;
    std::vector<cplx> m; // row-major

    cplx& at(std::size_t row, std::size_t col) { return m[row * dim + col]; }
    const cplx& at(std::size_t row, std::size_t col) const { return m[row * dim + col]; }

    static DenseUnitary identity(std::size_t dim);
    DenseUnitary operator*(const DenseUnitary& rhs) const;
    std::vector<cplx> apply(std::span<const cplx> v) const;
};

// Independent oracle for the strided gate kernels: builds the full circuit
// unitary by per-gate Kronecker index expansion and plain dense matrix
// products. Only unitary ops allowed; limited to n <= 6 qubits.
DenseUnitary brute_force_unitary(const Circuit& circuit);

} // namespace quiko::qsim
