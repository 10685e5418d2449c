#pragma once

// Data-parallel inner loops shared by the GL operator, the plant and
// controller steppers, and the performance indices.
//
// Every kernel has a scalar reference implementation. Vector variants
// (AVX2+FMA on x86-64, NEON on AArch64) are compiled when the toolchain
// supports them and chosen once at startup from the host CPU. The choice can
// be pinned with the FOPID_SIMD environment variable (scalar|avx2|neon|auto)
// or with select_backend().

#include <cstddef>
#include <span>
#include <string_view>

namespace fopid::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend backend);

/// Backends compiled into this binary and supported by the running CPU.
bool backend_available(Backend backend);

/// Backend used by the free functions below.
Backend active_backend();

/// Pins the dispatch table. Returns false (and leaves it unchanged) when the
/// backend is unavailable. Not thread-safe with respect to concurrent kernel
/// calls; call it during startup or from single-threaded tests.
bool select_backend(Backend backend);

/// Sum of products a[i] * b[i]. Spans must have equal length.
double dot(std::span<const double> a, std::span<const double> b);

/// Sum of |x[i]|.
double sum_abs(std::span<const double> x);

/// Sum of x[i]^2.
double sum_sq(std::span<const double> x);

/// Sum of i * |x[i]| (ramp weighted by sample index).
double ramp_sum_abs(std::span<const double> x);

/// Sum of i * x[i]^2.
double ramp_sum_sq(std::span<const double> x);

/// Raw per-backend table. Used by the equivalence tests to compare variants
/// directly without going through the global dispatch.
struct KernelTable {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum_abs)(const double*, std::size_t);
    double (*sum_sq)(const double*, std::size_t);
    double (*ramp_sum_abs)(const double*, std::size_t);
    double (*ramp_sum_sq)(const double*, std::size_t);
};

/// Returns nullptr when the backend is unavailable.
const KernelTable* table_for(Backend backend);

}  // namespace fopid::kernels
