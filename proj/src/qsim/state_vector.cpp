#include "quiko/qsim/state_vector.hpp"

#include "subset_iter.hpp"

#include <cmath>
#include <stdexcept>

namespace quiko::qsim {

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 28)
        throw std::invalid_argument("StateVector: qubit count out of range");
    amps_.assign(std::size_t(1) << n_qubits, cplx(0.0, 0.0));
    amps_[0] = 1.0;
}

void StateVector::reset_zero_state() {
    std::fill(amps_.begin(), amps_.end(), cplx(0.0, 0.0));
    amps_[0] = 1.0;
}

void StateVector::apply_1q(const cplx m[4], int target, std::size_t ctrl_mask,
                           std::size_t ctrl_val) {
    const std::size_t tmask = std::size_t(1) << target;
    if (ctrl_mask == 0) {
        active_kernels().apply_1q(amps_.data(), amps_.size(), tmask, m);
        return;
    }
    // Controlled dense gate: enumerate pair bases i0 (target bit 0) inside
    // the control subspace. These loops are short in practice, so scalar.
    const std::size_t sel = ctrl_mask | tmask;
    const auto [run, count] = detail::sel_runs(amps_.size(), sel);
    cplx* a = amps_.data();
    std::size_t i = ctrl_val;
    for (std::size_t r = 0; r < count; ++r) {
        for (std::size_t j = 0; j < run; ++j) {
            const std::size_t i0 = i + j;
            const std::size_t i1 = i0 | tmask;
            const cplx a0 = a[i0];
            const cplx a1 = a[i1];
            a[i0] = m[0] * a0 + m[1] * a1;
            a[i1] = m[2] * a0 + m[3] * a1;
        }
        i = detail::next_run_start(i, sel, ctrl_val, run);
    }
}

void StateVector::apply_phase(double lambda, int target, std::size_t ctrl_mask,
                              std::size_t ctrl_val) {
    const std::size_t tmask = std::size_t(1) << target;
    const cplx ph(std::cos(lambda), std::sin(lambda));
    active_kernels().phase_mul(amps_.data(), amps_.size(), ctrl_mask | tmask, ctrl_val | tmask,
                               ph);
}

void StateVector::apply_swap(int qa, int qb, std::size_t ctrl_mask, std::size_t ctrl_val) {
    const std::size_t am = std::size_t(1) << qa;
    const std::size_t bm = std::size_t(1) << qb;
    // Swap amplitudes between (a=1,b=0) and (a=0,b=1) within the control
    // subspace; iterate the (a=1,b=0) half.
    const std::size_t sel = ctrl_mask | am | bm;
    const std::size_t val = ctrl_val | am;
    const auto [run, count] = detail::sel_runs(amps_.size(), sel);
    cplx* a = amps_.data();
    std::size_t i = val;
    for (std::size_t r = 0; r < count; ++r) {
        for (std::size_t j = 0; j < run; ++j) {
            const std::size_t hi = i + j;
            const std::size_t lo = hi ^ am ^ bm;
            std::swap(a[hi], a[lo]);
        }
        i = detail::next_run_start(i, sel, val, run);
    }
}

double StateVector::prob_one(int qubit) const {
    const std::size_t qmask = std::size_t(1) << qubit;
    return active_kernels().sum_probs(amps_.data(), amps_.size(), qmask, qmask);
}

double StateVector::norm_sq() const {
    return active_kernels().sum_probs(amps_.data(), amps_.size(), 0, 0);
}

void StateVector::scale(double factor) {
    active_kernels().scale(amps_.data(), amps_.size(), factor);
}

void StateVector::project(int qubit, int outcome, double prob) {
    if (prob <= 0.0)
        throw std::invalid_argument("StateVector::project: zero-probability outcome");
    const std::size_t qmask = std::size_t(1) << qubit;
    const std::size_t discard_val = outcome ? 0 : qmask;
    active_kernels().phase_mul(amps_.data(), amps_.size(), qmask, discard_val, cplx(0.0, 0.0));
    scale(1.0 / std::sqrt(prob));
}

void StateVector::reset_qubit(int qubit, int outcome, double prob) {
    project(qubit, outcome, prob);
    if (outcome == 1) {
        static const cplx x_mat[4] = {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)};
        apply_1q(x_mat, qubit);
    }
}

cplx StateVector::overlap(const StateVector& other) const {
    if (other.dim() != dim())
        throw std::invalid_argument("StateVector::overlap: dimension mismatch");
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        acc += std::conj(amps_[i]) * other.amps_[i];
    return acc;
}

} // namespace quiko::qsim
