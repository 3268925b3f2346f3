#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace zeno::kernels {

namespace {

const KernelTable kScalar{"scalar", &detail::secular_scalar, &detail::phasor_scalar,
                          &detail::relax_scalar};
#ifdef ZENO_HAVE_AVX2
const KernelTable kAvx2{"avx2", &detail::secular_avx2, &detail::phasor_avx2, &detail::relax_avx2};
#endif

const KernelTable* initial_choice() noexcept {
    const KernelTable* best = &kScalar;
    if (const KernelTable* v = avx2_table(); v != nullptr && cpu_supports_avx2()) best = v;
    if (const char* env = std::getenv("ZENO_KERNELS")) {
        const std::string_view want(env);
        if (want == "scalar") return &kScalar;
        if (want == "avx2" && avx2_table() != nullptr && cpu_supports_avx2()) return avx2_table();
    }
    return best;
}

std::atomic<const KernelTable*>& slot() noexcept {
    static std::atomic<const KernelTable*> current{initial_choice()};
    return current;
}

} // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#ifdef ZENO_HAVE_AVX2
    return &kAvx2;
#else
    return nullptr;
#endif
}

bool cpu_supports_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_acquire); }

bool select(std::string_view name) noexcept {
    if (name == "scalar") {
        slot().store(&kScalar, std::memory_order_release);
        return true;
    }
    if (name == "avx2" && avx2_table() != nullptr && cpu_supports_avx2()) {
        slot().store(avx2_table(), std::memory_order_release);
        return true;
    }
    return false;
}

} // namespace zeno::kernels
