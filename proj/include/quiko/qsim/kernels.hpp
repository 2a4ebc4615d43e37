#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace quiko::qsim {

using cplx = std::complex<double>;

// Low-level statevector kernels. The scalar table is the reference
// implementation; the AVX2 table must produce the same results (checked by
// the equivalence tests). The active table is chosen once at startup from
// CPU capabilities and can be overridden via set_kernel_backend() or the
// QUIKO_KERNELS environment variable ("auto", "scalar", "avx2").
struct KernelTable {
    const char* name;

    // b0 = m[0]*a0 + m[1]*a1, b1 = m[2]*a0 + m[3]*a1 over all index pairs
    // (i0, i0 | target_mask). No control conditioning.
    void (*apply_1q)(cplx* amps, std::size_t n, std::size_t target_mask, const cplx m[4]);

    // amps[i] *= phase for every i with (i & sel_mask) == sel_val.
    void (*phase_mul)(cplx* amps, std::size_t n, std::size_t sel_mask, std::size_t sel_val,
                      cplx phase);

    // sum of |amps[i]|^2 over every i with (i & sel_mask) == sel_val.
    double (*sum_probs)(const cplx* amps, std::size_t n, std::size_t sel_mask,
                        std::size_t sel_val);

    void (*scale)(cplx* amps, std::size_t n, double factor);
};

const KernelTable& scalar_kernels();

bool avx2_available();
const KernelTable& avx2_kernels(); // valid only when avx2_available()

const KernelTable& active_kernels();

// Returns false (and leaves the current backend in place) if the request
// cannot be honored on this host.
bool set_kernel_backend(const std::string& name);

} // namespace quiko::qsim
