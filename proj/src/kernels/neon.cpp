// AArch64 only; Advanced SIMD is part of the base ISA there, so no runtime
// probe is needed.

#include <arm_neon.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace fopid::kernels::detail {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_abs_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) total += std::fabs(x[i]);
    return total;
}

double sum_sq_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t v = vld1q_f64(x + i);
        acc = vfmaq_f64(acc, v, v);
    }
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) total += x[i] * x[i];
    return total;
}

double ramp_sum_abs_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    const double start[2] = {0.0, 1.0};
    float64x2_t idx = vld1q_f64(start);
    const float64x2_t two = vdupq_n_f64(2.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, idx, vabsq_f64(vld1q_f64(x + i)));
        idx = vaddq_f64(idx, two);
    }
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) total += static_cast<double>(i) * std::fabs(x[i]);
    return total;
}

double ramp_sum_sq_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    const double start[2] = {0.0, 1.0};
    float64x2_t idx = vld1q_f64(start);
    const float64x2_t two = vdupq_n_f64(2.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t v = vld1q_f64(x + i);
        acc = vfmaq_f64(acc, idx, vmulq_f64(v, v));
        idx = vaddq_f64(idx, two);
    }
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) total += static_cast<double>(i) * (x[i] * x[i]);
    return total;
}

}  // namespace

const KernelTable& neon_table() {
    static constexpr KernelTable table{dot_neon, sum_abs_neon, sum_sq_neon,
                                       ramp_sum_abs_neon, ramp_sum_sq_neon};
    return table;
}

}  // namespace fopid::kernels::detail
