#pragma once

// Unity-feedback loop  r -> e = r - c -> controller -> u -> plant -> c.

#include <cstddef>
#include <string_view>
#include <vector>

#include "fopid/controllers.hpp"
#include "fopid/fractional_plant.hpp"
#include "fopid/gl_calculus.hpp"
#include "fopid/signal.hpp"

namespace fopid {

/// Algebraic: e_k = r_k - c_k, solved exactly each step.
/// Delayed: e_k = r_k - c_{k-1}, c_{-1} = 0.
enum class FeedbackMode { Algebraic, Delayed };

std::string_view to_string(FeedbackMode mode);
FeedbackMode parse_feedback_mode(std::string_view text);

struct SimConfig {
    double step = 0.01;
    double horizon = 10.0;
    FeedbackMode feedback = FeedbackMode::Algebraic;
    Memory memory = Memory::full();
    int cfe_order = kDefaultCfeOrder;

    /// step > 0, horizon >= step, horizon / step <= 1e6, cfe_order in {1,3,5}.
    /// Throws Error(InvalidArgument) / Error(UnsupportedOrder).
    void validate() const;

    /// round(horizon / step) + 1
    std::size_t samples() const;
};

struct SimulationTrace {
    double step = 0.0;
    std::vector<double> reference;
    std::vector<double> error;
    std::vector<double> control;
    std::vector<double> output;
    bool diverged = false;
    /// The algebraic loop was singular (1 + direct loop gain == 0) and the
    /// simulation fell back to delayed feedback.
    bool loop_fallback = false;
    FeedbackMode feedback = FeedbackMode::Algebraic;

    std::size_t size() const noexcept { return output.size(); }
};

/// Constant reference of config.samples() samples.
SampledSignal step_reference(double amplitude, const SimConfig& config);

/// Runs the loop from rest. Stops at the first output sample with
/// |c| > kDivergenceLimit or a non-finite value, flags the trace and drops
/// that sample from all four sequences.
SimulationTrace simulate_closed_loop(const FractionalTransferFunction& plant,
                                     const ControllerParams& params, Realization realization,
                                     const SampledSignal& reference, const SimConfig& config);

}  // namespace fopid
