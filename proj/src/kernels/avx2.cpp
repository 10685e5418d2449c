// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace fopid::kernels::detail {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double acc = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_abs_avx2(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, abs_pd(_mm256_loadu_pd(x + i)));
        acc1 = _mm256_add_pd(acc1, abs_pd(_mm256_loadu_pd(x + i + 4)));
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += std::fabs(x[i]);
    return acc;
}

double sum_sq_avx2(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d v0 = _mm256_loadu_pd(x + i);
        const __m256d v1 = _mm256_loadu_pd(x + i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double ramp_sum_abs_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d four = _mm256_set1_pd(4.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(idx, abs_pd(_mm256_loadu_pd(x + i)), acc);
        idx = _mm256_add_pd(idx, four);
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += static_cast<double>(i) * std::fabs(x[i]);
    return total;
}

double ramp_sum_sq_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d four = _mm256_set1_pd(4.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(idx, _mm256_mul_pd(v, v), acc);
        idx = _mm256_add_pd(idx, four);
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += static_cast<double>(i) * (x[i] * x[i]);
    return total;
}

}  // namespace

const KernelTable& avx2_table() {
    static constexpr KernelTable table{dot_avx2, sum_abs_avx2, sum_sq_avx2,
                                       ramp_sum_abs_avx2, ramp_sum_sq_avx2};
    return table;
}

}  // namespace fopid::kernels::detail
