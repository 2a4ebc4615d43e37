#include "quiko/qsim/kernels.hpp"

#include "subset_iter.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace quiko::qsim {

namespace {

// One __m256d holds two interleaved complex doubles (re0, im0, re1, im1).
// Multiplying by a complex scalar c: with vs = v with re/im swapped,
// addsub(v*c.re, vs*c.im) yields (re*c.re - im*c.im, im*c.re + re*c.im).
inline __m256d cmul(__m256d v, __m256d cre, __m256d cim) {
    const __m256d vs = _mm256_permute_pd(v, 0x5);
    return _mm256_addsub_pd(_mm256_mul_pd(v, cre), _mm256_mul_pd(vs, cim));
}

void apply_1q_avx2(cplx* ac, std::size_t n, std::size_t tmask, const cplx m[4]) {
    double* a = reinterpret_cast<double*>(ac);
    if (tmask >= 2) {
        const __m256d m00re = _mm256_set1_pd(m[0].real()), m00im = _mm256_set1_pd(m[0].imag());
        const __m256d m01re = _mm256_set1_pd(m[1].real()), m01im = _mm256_set1_pd(m[1].imag());
        const __m256d m10re = _mm256_set1_pd(m[2].real()), m10im = _mm256_set1_pd(m[2].imag());
        const __m256d m11re = _mm256_set1_pd(m[3].real()), m11im = _mm256_set1_pd(m[3].imag());
        for (std::size_t base = 0; base < n; base += 2 * tmask) {
            for (std::size_t j = 0; j < tmask; j += 2) {
                const std::size_t i0 = base + j;
                const std::size_t i1 = i0 + tmask;
                const __m256d a0 = _mm256_loadu_pd(a + 2 * i0);
                const __m256d a1 = _mm256_loadu_pd(a + 2 * i1);
                const __m256d b0 = _mm256_add_pd(cmul(a0, m00re, m00im), cmul(a1, m01re, m01im));
                const __m256d b1 = _mm256_add_pd(cmul(a0, m10re, m10im), cmul(a1, m11re, m11im));
                _mm256_storeu_pd(a + 2 * i0, b0);
                _mm256_storeu_pd(a + 2 * i1, b1);
            }
        }
    } else {
        // Target bit 0: the pair (a0, a1) sits in one vector. b = cmul(v, c1)
        // + cmul(swap128(v), c2) with per-lane constants (m00|m11, m01|m10).
        const __m256d c1re = _mm256_set_pd(m[3].real(), m[3].real(), m[0].real(), m[0].real());
        const __m256d c1im = _mm256_set_pd(m[3].imag(), m[3].imag(), m[0].imag(), m[0].imag());
        const __m256d c2re = _mm256_set_pd(m[2].real(), m[2].real(), m[1].real(), m[1].real());
        const __m256d c2im = _mm256_set_pd(m[2].imag(), m[2].imag(), m[1].imag(), m[1].imag());
        for (std::size_t i = 0; i < n; i += 2) {
            const __m256d v = _mm256_loadu_pd(a + 2 * i);
            const __m256d u = _mm256_permute2f128_pd(v, v, 0x01);
            const __m256d b = _mm256_add_pd(cmul(v, c1re, c1im), cmul(u, c2re, c2im));
            _mm256_storeu_pd(a + 2 * i, b);
        }
    }
}

void phase_mul_avx2(cplx* ac, std::size_t n, std::size_t mask, std::size_t val, cplx ph) {
    double* a = reinterpret_cast<double*>(ac);
    const auto [run, count] = detail::sel_runs(n, mask);
    const __m256d pre = _mm256_set1_pd(ph.real());
    const __m256d pim = _mm256_set1_pd(ph.imag());
    std::size_t i = val;
    for (std::size_t r = 0; r < count; ++r) {
        if (run >= 2) {
            for (std::size_t j = 0; j < run; j += 2) {
                double* p = a + 2 * (i + j);
                _mm256_storeu_pd(p, cmul(_mm256_loadu_pd(p), pre, pim));
            }
        } else {
            ac[i] *= ph;
        }
        i = detail::next_run_start(i, mask, val, run);
    }
}

double sum_probs_avx2(const cplx* ac, std::size_t n, std::size_t mask, std::size_t val) {
    const double* a = reinterpret_cast<const double*>(ac);
    const auto [run, count] = detail::sel_runs(n, mask);
    __m256d acc = _mm256_setzero_pd();
    double tail = 0.0;
    std::size_t i = val;
    for (std::size_t r = 0; r < count; ++r) {
        if (run >= 2) {
            for (std::size_t j = 0; j < run; j += 2) {
                const __m256d v = _mm256_loadu_pd(a + 2 * (i + j));
                acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
            }
        } else {
            const cplx v = ac[i];
            tail += v.real() * v.real() + v.imag() * v.imag();
        }
        i = detail::next_run_start(i, mask, val, run);
    }
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d s2 = _mm_add_pd(lo, hi);
    return tail + _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
}

void scale_avx2(cplx* ac, std::size_t n, double f) {
    double* a = reinterpret_cast<double*>(ac);
    const __m256d vf = _mm256_set1_pd(f);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        _mm256_storeu_pd(a + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(a + 2 * i), vf));
    for (; i < n; ++i)
        ac[i] *= f;
}

} // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{"avx2", &apply_1q_avx2, &phase_mul_avx2, &sum_probs_avx2,
                                   &scale_avx2};
    return table;
}

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

} // namespace quiko::qsim

#else // !__AVX2__

namespace quiko::qsim {

const KernelTable& avx2_kernels() { return scalar_kernels(); }

bool avx2_available() { return false; }

} // namespace quiko::qsim

#endif
