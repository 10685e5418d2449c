#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace fopid::test {

inline std::vector<double> random_signal(std::size_t n, std::uint64_t seed, double lo = -1.0,
                                         double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(n);
    for (auto& v : out) v = dist(rng);
    return out;
}

inline double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (const double v : x) m = std::max(m, std::fabs(v));
    return m;
}

/// max |a - b| / max(|b|_inf, floor)
inline double max_rel_diff(std::span<const double> a, std::span<const double> b,
                           double floor = 1e-300) {
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::fabs(a[i] - b[i]));
    return diff / std::max(max_abs(b), floor);
}

inline std::vector<double> ramp(std::size_t n, double step) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<double>(k) * step;
    return out;
}

}  // namespace fopid::test
