#include "fopid/loop_engine.hpp"

#include <cmath>
#include <string>

#include "fopid/error.hpp"

namespace fopid {

std::string_view to_string(FeedbackMode mode) {
    return mode == FeedbackMode::Algebraic ? "algebraic" : "delayed";
}

FeedbackMode parse_feedback_mode(std::string_view text) {
    if (text == "algebraic") return FeedbackMode::Algebraic;
    if (text == "delayed") return FeedbackMode::Delayed;
    throw_invalid("unknown feedback mode '" + std::string(text) + "' (expected algebraic or delayed)");
}

void SimConfig::validate() const {
    if (!(std::isfinite(step) && step > 0.0)) throw_invalid("sim step must be positive");
    if (!(std::isfinite(horizon) && horizon >= step)) throw_invalid("sim horizon must be >= step");
    if (horizon / step > 1e6) throw_invalid("sim horizon / step exceeds 1e6 samples");
    cfe_numerator(0.0, cfe_order);
}

std::size_t SimConfig::samples() const {
    return static_cast<std::size_t>(std::llround(horizon / step)) + 1;
}

SampledSignal step_reference(double amplitude, const SimConfig& config) {
    config.validate();
    return SampledSignal(config.step, std::vector<double>(config.samples(), amplitude));
}

SimulationTrace simulate_closed_loop(const FractionalTransferFunction& plant,
                                     const ControllerParams& params, Realization realization,
                                     const SampledSignal& reference, const SimConfig& config) {
    config.validate();
    if (reference.empty()) throw_invalid("empty reference signal");
    if (std::fabs(reference.step - config.step) > 1e-12 * config.step) {
        throw_invalid("reference step does not match the sim step");
    }

    const std::size_t n = reference.size();
    PlantStepper plant_stepper(plant, config.step, n, config.memory);
    auto controller = make_controller_stepper(params, realization, config.step, n,
                                              config.cfe_order, config.memory);

    SimulationTrace trace;
    trace.step = config.step;
    trace.feedback = config.feedback;
    trace.reference.reserve(n);
    trace.error.reserve(n);
    trace.control.reserve(n);
    trace.output.reserve(n);

    // e_k (1 + P D) = r_k - P u_free - c_free
    const double loop_gain = plant_stepper.feedthrough() * controller->direct_gain();
    const double denom = 1.0 + loop_gain;
    FeedbackMode mode = config.feedback;
    if (mode == FeedbackMode::Algebraic &&
        (!std::isfinite(denom) || std::fabs(denom) <= 1e-12 * std::fmax(1.0, std::fabs(loop_gain)))) {
        mode = FeedbackMode::Delayed;
        trace.loop_fallback = true;
        trace.feedback = mode;
    }

    double previous_output = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = reference.samples[k];
        double e;
        if (mode == FeedbackMode::Algebraic) {
            const double c_free = plant_stepper.free_response();
            const double u_free = controller->free_response();
            e = (r - plant_stepper.feedthrough() * u_free - c_free) / denom;
        } else {
            e = r - previous_output;
        }
        const double u = controller->step(e);
        const double c = plant_stepper.output_for(u);
        if (!std::isfinite(c) || !std::isfinite(u) || std::fabs(c) > kDivergenceLimit) {
            trace.diverged = true;
            break;
        }
        plant_stepper.commit(u, c);
        trace.reference.push_back(r);
        trace.error.push_back(e);
        trace.control.push_back(u);
        trace.output.push_back(c);
        previous_output = c;
    }
    return trace;
}

}  // namespace fopid
