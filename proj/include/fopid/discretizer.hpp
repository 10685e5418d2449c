#pragma once

// Rational IIR approximations of s^r obtained by raising the Tustin map
//   s -> (2/T) (1 - z^-1) / (1 + z^-1)
// to the power r and truncating its continued fraction expansion:
//
//   s^r ~ (2/T)^r P_n(z^-1; r) / Q_n(z^-1; r),   n in {1, 3, 5}.
//
// P and Q are the closed-form CFE polynomials; Q(z^-1; r) == P(z^-1; -r), so
// the integrator s^-r is the reciprocal of the differentiator s^r.

#include <complex>
#include <cstddef>
#include <vector>

#include "fopid/signal.hpp"

namespace fopid {

/// Closed-form CFE numerator coefficients p_0..p_n (ascending powers of z^-1)
/// for s^r. The denominator is cfe_numerator(-r, order).
/// Throws Error(UnsupportedOrder) unless order is 1, 3 or 5.
std::vector<double> cfe_numerator(double r, int order);

/// gain * P(z^-1) / Q(z^-1), with the streaming state of the difference
/// equation
///   q_0 y_k = gain * sum_i p_i u_{k-i} - sum_{i>=1} q_i y_{k-i}.
class RationalFilter {
public:
    /// Pass-through filter (gain 1, P = Q = 1).
    RationalFilter();
    /// Throws Error(InvalidArgument) on mismatched lengths or q_0 == 0.
    RationalFilter(double gain, std::vector<double> num, std::vector<double> den);

    static RationalFilter identity() { return {}; }

    double gain() const noexcept { return gain_; }
    const std::vector<double>& num() const noexcept { return num_; }
    const std::vector<double>& den() const noexcept { return den_; }
    /// Polynomial degree n (0 for the identity filter).
    int order() const noexcept { return static_cast<int>(num_.size()) - 1; }

    /// All poles strictly inside the unit circle. Computed at construction.
    bool stable() const noexcept { return stable_; }
    /// Largest pole modulus.
    double spectral_radius() const noexcept { return spectral_radius_; }

    /// dy_k / du_k = gain * p_0 / q_0.
    double direct_gain() const noexcept { return gain_ * num_[0] / den_[0]; }
    /// Output at the current step if u_k were zero.
    double free_response() const;
    /// Feeds u_k, returns y_k, advances the state.
    double step(double u);
    /// Clears input/output history.
    void reset();

private:
    double gain_ = 1.0;
    std::vector<double> num_{1.0};
    std::vector<double> den_{1.0};
    // Most recent sample first.
    std::vector<double> input_history_;
    std::vector<double> output_history_;
    bool stable_ = true;
    double spectral_radius_ = 0.0;

    void push(double u, double y);
};

/// CFE approximation of s^r for sampling period T. r == 0 yields the identity
/// filter. Throws Error(UnsupportedOrder) for order outside {1,3,5} and
/// Error(InvalidArgument) for T <= 0 or non-finite r.
RationalFilter cfe_tustin(double r, int order, double period);

/// Runs the filter over the whole input from zero state. The filter argument
/// is not modified.
SampledSignal filter_apply(const RationalFilter& filter, const SampledSignal& input);

/// gain * P(e^-jwT) / Q(e^-jwT). Throws Error(InvalidArgument) unless
/// 0 < omega < pi / T.
std::complex<double> frequency_response(const RationalFilter& filter, double omega, double period);

}  // namespace fopid
