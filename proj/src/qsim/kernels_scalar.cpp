#include "quiko/qsim/kernels.hpp"

#include "subset_iter.hpp"

namespace quiko::qsim {

namespace {

void apply_1q_scalar(cplx* a, std::size_t n, std::size_t tmask, const cplx m[4]) {
    const std::size_t half = n >> 1;
    const std::size_t lo = tmask - 1;
    const std::size_t hi = ~lo;
    const cplx m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = ((k & hi) << 1) | (k & lo);
        const std::size_t i1 = i0 | tmask;
        const cplx a0 = a[i0];
        const cplx a1 = a[i1];
        a[i0] = m00 * a0 + m01 * a1;
        a[i1] = m10 * a0 + m11 * a1;
    }
}

void phase_mul_scalar(cplx* a, std::size_t n, std::size_t mask, std::size_t val, cplx ph) {
    const auto [run, count] = detail::sel_runs(n, mask);
    std::size_t i = val;
    for (std::size_t r = 0; r < count; ++r) {
        for (std::size_t j = 0; j < run; ++j)
            a[i + j] *= ph;
        i = detail::next_run_start(i, mask, val, run);
    }
}

double sum_probs_scalar(const cplx* a, std::size_t n, std::size_t mask, std::size_t val) {
    const auto [run, count] = detail::sel_runs(n, mask);
    double acc = 0.0;
    std::size_t i = val;
    for (std::size_t r = 0; r < count; ++r) {
        for (std::size_t j = 0; j < run; ++j) {
            const cplx v = a[i + j];
            acc += v.real() * v.real() + v.imag() * v.imag();
        }
        i = detail::next_run_start(i, mask, val, run);
    }
    return acc;
}

void scale_scalar(cplx* a, std::size_t n, double f) {
    for (std::size_t i = 0; i < n; ++i)
        a[i] *= f;
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", &apply_1q_scalar, &phase_mul_scalar,
                                   &sum_probs_scalar, &scale_scalar};
    return table;
}

} // namespace quiko::qsim
