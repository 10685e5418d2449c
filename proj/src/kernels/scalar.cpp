#include <cmath>

#include "kernels_impl.hpp"

namespace fopid::kernels::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_abs_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i]);
    return acc;
}

double sum_sq_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double ramp_sum_abs_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(i) * std::fabs(x[i]);
    return acc;
}

double ramp_sum_sq_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(i) * (x[i] * x[i]);
    return acc;
}

}  // namespace

const KernelTable& scalar_table() {
    static constexpr KernelTable table{dot_scalar, sum_abs_scalar, sum_sq_scalar,
                                       ramp_sum_abs_scalar, ramp_sum_sq_scalar};
    return table;
}

}  // namespace fopid::kernels::detail
