#pragma once

// Grünwald-Letnikov weights and the discrete differintegral operator
//
//   D^alpha f(t_k) ~ h^(-alpha) * sum_{j=0}^{min(k, L)} b_j f(t_k - j h),
//   b_0 = 1,  b_j = (1 - (1 + alpha) / j) b_{j-1},
//
// with zero initial conditions (f = 0 before start_time) and an optional
// short-memory window L counted in samples.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "fopid/signal.hpp"

namespace fopid {

/// Number of past samples kept in a GL sum; full() keeps the whole history.
class Memory {
public:
    static constexpr Memory full() noexcept { return Memory{kFull}; }
    static constexpr Memory last(std::size_t samples) noexcept { return Memory{samples}; }

    constexpr bool is_full() const noexcept { return samples_ == kFull; }
    constexpr std::size_t samples() const noexcept { return samples_; }

    /// Length of the history window available at step k.
    constexpr std::size_t window(std::size_t k) const noexcept {
        return k < samples_ ? k : samples_;
    }

    friend constexpr bool operator==(Memory, Memory) = default;

private:
    static constexpr std::size_t kFull = std::numeric_limits<std::size_t>::max();
    constexpr explicit Memory(std::size_t samples) noexcept : samples_(samples) {}
    std::size_t samples_;
};

struct GlCoefficients {
    double alpha = 0.0;
    /// b_0..b_count.
    std::vector<double> weights;
};

/// Weights b_0..b_count of order alpha. Throws Error(InvalidArgument) for
/// non-finite alpha.
GlCoefficients gl_coefficients(double alpha, std::size_t count);

/// Applies a precomputed weight sequence w_0..w_N to the history of a signal:
///
///   apply(x_0..x_{k-1}) = sum_{j=1}^{min(k, L)} w_j x_{k-j}.
///
/// The current-sample weight w_0 is kept apart (lead()) so that steppers can
/// solve for x_k when it appears linearly on both sides of an equation.
/// Weights are stored reversed so each evaluation is one contiguous dot
/// product.
class HistoryConvolution {
public:
    HistoryConvolution() = default;
    explicit HistoryConvolution(std::span<const double> weights, Memory memory = Memory::full());

    double lead() const noexcept { return lead_; }
    /// Longest history the stored weights cover.
    std::size_t capacity() const noexcept { return reversed_.size(); }
    Memory memory() const noexcept { return memory_; }

    /// past.size() is the current step k; requires min(k, L) <= capacity().
    double apply(std::span<const double> past) const;

private:
    double lead_ = 0.0;
    std::vector<double> reversed_;
    Memory memory_ = Memory::full();
};

/// Discrete differintegral of the signal; output has the input's step,
/// start time and length. Throws Error(InvalidArgument) for an empty signal.
SampledSignal gl_differintegrate(const SampledSignal& signal, double alpha,
                                 Memory memory = Memory::full());

/// Same, with caller-cached weights; coeffs must cover the memory window
/// (at least min(size - 1, L) + 1 entries).
SampledSignal gl_differintegrate(const SampledSignal& signal, const GlCoefficients& coeffs,
                                 Memory memory = Memory::full());

}  // namespace fopid
