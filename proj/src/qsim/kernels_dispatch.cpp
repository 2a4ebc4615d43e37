#include "quiko/qsim/kernels.hpp"

#include <cstdlib>

namespace quiko::qsim {

namespace {

const KernelTable* pick(const std::string& name) {
    if (name == "scalar")
        return &scalar_kernels();
    if (name == "avx2")
        return avx2_available() ? &avx2_kernels() : nullptr;
    if (name == "auto" || name.empty())
        return avx2_available() ? &avx2_kernels() : &scalar_kernels();
    return nullptr;
}

const KernelTable* initial() {
    if (const char* env = std::getenv("QUIKO_KERNELS")) {
        if (const KernelTable* t = pick(env))
            return t;
    }
    return pick("auto");
}

const KernelTable*& slot() {
    static const KernelTable* active = initial();
    return active;
}

} // namespace

const KernelTable& active_kernels() { return *slot(); }

bool set_kernel_backend(const std::string& name) {
    const KernelTable* t = pick(name);
    if (!t)
        return false;
    slot() = t;
    return true;
}

} // namespace quiko::qsim
