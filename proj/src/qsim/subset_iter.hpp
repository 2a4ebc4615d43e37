#pragma once

#include <bit>
#include <cstddef>

namespace quiko::qsim::detail {

// The indices selected by (i & mask) == val form contiguous runs of length
// 2^countr_zero(mask). Kernels iterate run starts and sweep each run, which
// keeps the inner loops unit-stride.
struct SelRuns {
    std::size_t run;   // run length (power of two)
    std::size_t count; // number of runs in [0, n)
};

inline SelRuns sel_runs(std::size_t n, std::size_t mask) {
    if (mask == 0)
        return {n, 1};
    const std::size_t run = std::size_t(1) << std::countr_zero(mask);
    const std::size_t selected = n >> std::popcount(mask);
    return {run, selected / run};
}

// Carry propagation through the mask bits advances to the next run start.
inline std::size_t next_run_start(std::size_t i, std::size_t mask, std::size_t val,
                                  std::size_t run) {
    return (((i | mask) + run) & ~mask) | val;
}

} // namespace quiko::qsim::detail
