#pragma once

#include "quiko/qsim/kernels.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace quiko::qsim {

// Dense statevector over n qubits. Amplitude index i encodes the basis state
// whose qubit k is bit (i >> k) & 1, i.e. qubit 0 is the least significant
// bit of the index. Gate application keeps the norm at 1 (up to roundoff).
class StateVector {
public:
    explicit StateVector(int n_qubits);

    int n_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const cplx> amplitudes() const { return amps_; }
    cplx amplitude(std::size_t i) const { return amps_[i]; }
    void set_amplitude(std::size_t i, cplx v) { amps_[i] = v; }

    void reset_zero_state();

    // 2x2 unitary m (row-major) on `target`, restricted to the subspace where
    // (index & ctrl_mask) == ctrl_val.
    void apply_1q(const cplx m[4], int target, std::size_t ctrl_mask = 0,
                  std::size_t ctrl_val = 0);
    // diag(1, e^{i lambda}) on `target`, same control conditioning.
    void apply_phase(double lambda, int target, std::size_t ctrl_mask = 0,
                     std::size_t ctrl_val = 0);
    void apply_swap(int qa, int qb, std::size_t ctrl_mask = 0, std::size_t ctrl_val = 0);

    double prob_one(int qubit) const;
    double norm_sq() const;
    void scale(double factor);

    // Collapse `qubit` to `outcome`, renormalizing by the outcome probability.
    void project(int qubit, int outcome, double prob);
    // Measure-and-reinitialize: collapse, then map the survivor onto |0>.
    void reset_qubit(int qubit, int outcome, double prob);

    cplx overlap(const StateVector& other) const;

private:
    int n_;
    std::vector<cplx> amps_;
};

} // namespace quiko::qsim
