#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "symqfi/kernels.hpp"

namespace symqfi {

#ifndef SYMQFI_COMPILE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    if (avx2_kernels() == nullptr) return false;
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const KernelTable* select_initial() {
    if (const char* env = std::getenv("SYMQFI_SIMD")) {
        const std::string want{env};
        if (want == "none" || want == "scalar") return &scalar_kernels();
        if (want == "avx2" && cpu_supports_avx2()) return avx2_kernels();
    }
    return cpu_supports_avx2() ? avx2_kernels() : &scalar_kernels();
}

std::atomic<const KernelTable*>& active_table() {
    static std::atomic<const KernelTable*> table{select_initial()};
    return table;
}

}  // namespace

const KernelTable& kernels() { return *active_table().load(std::memory_order_acquire); }

void force_simd_level(SimdLevel level) {
    switch (level) {
        case SimdLevel::none:
            active_table().store(&scalar_kernels(), std::memory_order_release);
            return;
        case SimdLevel::avx2:
            if (!cpu_supports_avx2()) throw std::runtime_error("AVX2 kernels unavailable on this CPU/build");
            active_table().store(avx2_kernels(), std::memory_order_release);
            return;
    }
}

SimdLevel active_simd_level() { return kernels().level; }

std::string_view simd_level_name(SimdLevel level) {
    return level == SimdLevel::avx2 ? "avx2" : "none";
}

}  // namespace symqfi
