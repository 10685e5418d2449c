#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace fopid::kernels {
namespace {

bool cpu_supports(Backend backend) {
    switch (backend) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if defined(FOPID_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::Neon:
#if defined(FOPID_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend best_backend() {
    if (cpu_supports(Backend::Avx2)) return Backend::Avx2;
    if (cpu_supports(Backend::Neon)) return Backend::Neon;
    return Backend::Scalar;
}

Backend initial_backend() {
    const char* env = std::getenv("FOPID_SIMD");
    if (env != nullptr) {
        const std::string requested{env};
        if (requested == "scalar") return Backend::Scalar;
        if (requested == "avx2" && cpu_supports(Backend::Avx2)) return Backend::Avx2;
        if (requested == "neon" && cpu_supports(Backend::Neon)) return Backend::Neon;
    }
    return best_backend();
}

struct Dispatch {
    std::atomic<Backend> backend{initial_backend()};
    std::atomic<const KernelTable*> table{table_for(backend.load())};
};

Dispatch& dispatch() {
    static Dispatch instance;
    return instance;
}

const KernelTable& active() {
    return *dispatch().table.load(std::memory_order_relaxed);
}

}  // namespace

std::string_view backend_name(Backend backend) {
    switch (backend) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

bool backend_available(Backend backend) { return cpu_supports(backend); }

const KernelTable* table_for(Backend backend) {
    if (!cpu_supports(backend)) return nullptr;
    switch (backend) {
        case Backend::Scalar: return &detail::scalar_table();
#if defined(FOPID_HAVE_AVX2)
        case Backend::Avx2: return &detail::avx2_table();
#endif
#if defined(FOPID_HAVE_NEON)
        case Backend::Neon: return &detail::neon_table();
#endif
        default: return nullptr;
    }
}

Backend active_backend() { return dispatch().backend.load(); }

bool select_backend(Backend backend) {
    const KernelTable* table = table_for(backend);
    if (table == nullptr) return false;
    dispatch().table.store(table);
    dispatch().backend.store(backend);
    return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return active().dot(a.data(), b.data(), a.size());
}

double sum_abs(std::span<const double> x) { return active().sum_abs(x.data(), x.size()); }

double sum_sq(std::span<const double> x) { return active().sum_sq(x.data(), x.size()); }

double ramp_sum_abs(std::span<const double> x) {
    return active().ramp_sum_abs(x.data(), x.size());
}

double ramp_sum_sq(std::span<const double> x) {
    return active().ramp_sum_sq(x.data(), x.size());
}

}  // namespace fopid::kernels
