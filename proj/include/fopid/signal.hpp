#pragma once

#include <cstddef>
#include <vector>

namespace fopid {

/// Uniformly sampled signal x(start_time + k * step), k = 0..size()-1.
/// Samples before start_time are taken as zero by every operator.
struct SampledSignal {
    double step = 1.0;
    std::vector<double> samples;
    double start_time = 0.0;
    /// Set when a simulation stopped on a non-finite or runaway sample; the
    /// samples are then truncated before the offending index.
    bool diverged = false;

    SampledSignal() = default;
    /// Throws Error(InvalidArgument) when step is not a positive finite number.
    SampledSignal(double step, std::vector<double> samples, double start_time = 0.0);

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }
    double time(std::size_t k) const noexcept {
        return start_time + static_cast<double>(k) * step;
    }
};

}  // namespace fopid
