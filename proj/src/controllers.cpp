#include "fopid/controllers.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "fopid/error.hpp"

namespace fopid {
namespace {

// s^order as a CFE filter, or nothing for the s^0 pass-through.
std::optional<RationalFilter> cfe_term(double order, int cfe_order, double period) {
    if (order == 0.0) {
        cfe_numerator(0.0, cfe_order);  // still reject unsupported orders
        return std::nullopt;
    }
    return cfe_tustin(order, cfe_order, period);
}

class CfeStepper final : public ControllerStepper {
public:
    CfeStepper(const ControllerParams& p, double step, int cfe_order)
        : kp_(p.kp), ti_(p.ti), td_(p.td),
          integral_(cfe_term(-p.lambda, cfe_order, step)),
          derivative_(cfe_term(p.delta, cfe_order, step)) {}

    double direct_gain() const override {
        return kp_ + ti_ * (integral_ ? integral_->direct_gain() : 1.0) +
               td_ * (derivative_ ? derivative_->direct_gain() : 1.0);
    }

    double free_response() const override {
        double u = 0.0;
        if (integral_) u += ti_ * integral_->free_response();
        if (derivative_) u += td_ * derivative_->free_response();
        return u;
    }

    double step(double e) override {
        const double yi = integral_ ? integral_->step(e) : e;
        const double yd = derivative_ ? derivative_->step(e) : e;
        return kp_ * e + ti_ * yi + td_ * yd;
    }

private:
    double kp_, ti_, td_;
    std::optional<RationalFilter> integral_;
    std::optional<RationalFilter> derivative_;
};

// Both GL sums folded into one weight sequence:
//   w_j = ti h^lambda b_j(-lambda) + td h^-delta b_j(delta),  w_0 += kp.
class GlStepper final : public ControllerStepper {
public:
    GlStepper(const ControllerParams& p, double step, std::size_t samples, Memory memory) {
        const std::size_t count = memory.window(samples == 0 ? 0 : samples - 1);
        std::vector<double> weights(count + 1, 0.0);
        if (p.ti != 0.0) {
            const double scale = p.ti * std::pow(step, p.lambda);
            const auto b = gl_coefficients(-p.lambda, count);
            for (std::size_t j = 0; j <= count; ++j) weights[j] += scale * b.weights[j];
        }
        if (p.td != 0.0) {
            const double scale = p.td / std::pow(step, p.delta);
            const auto b = gl_coefficients(p.delta, count);
            for (std::size_t j = 0; j <= count; ++j) weights[j] += scale * b.weights[j];
        }
        weights[0] += p.kp;
        conv_ = HistoryConvolution(weights, memory);
        history_.reserve(samples);
    }

    double direct_gain() const override { return conv_.lead(); }
    double free_response() const override { return conv_.apply(history_); }

    double step(double e) override {
        const double u = conv_.lead() * e + conv_.apply(history_);
        history_.push_back(e);
        return u;
    }

private:
    HistoryConvolution conv_;
    std::vector<double> history_;
};

}  // namespace

void ControllerParams::validate() const {
    for (const double gain : {kp, ti, td}) {
        if (!std::isfinite(gain) || gain < 0.0) throw_invalid("controller gains must be finite and >= 0");
    }
    for (const double order : {lambda, delta}) {
        if (!std::isfinite(order) || order < 0.0 || order > 2.0) {
            throw_invalid("controller orders must lie in [0, 2]");
        }
    }
}

std::string_view to_string(Realization realization) {
    return realization == Realization::Cfe ? "cfe" : "gl";
}

Realization parse_realization(std::string_view text) {
    if (text == "cfe") return Realization::Cfe;
    if (text == "gl") return Realization::Gl;
    throw_invalid("unknown realization '" + std::string(text) + "' (expected cfe or gl)");
}

SampledSignal fopid_apply_cfe(const ControllerParams& params, const SampledSignal& error,
                              int cfe_order) {
    params.validate();
    if (error.empty()) throw_invalid("empty error signal");
    const auto integral = cfe_term(-params.lambda, cfe_order, error.step);
    const auto derivative = cfe_term(params.delta, cfe_order, error.step);

    SampledSignal u = error;
    u.diverged = false;
    for (auto& v : u.samples) v *= params.kp;
    if (params.ti != 0.0) {
        const SampledSignal yi = integral ? filter_apply(*integral, error) : error;
        for (std::size_t k = 0; k < u.size(); ++k) u.samples[k] += params.ti * yi.samples[k];
    }
    if (params.td != 0.0) {
        const SampledSignal yd = derivative ? filter_apply(*derivative, error) : error;
        for (std::size_t k = 0; k < u.size(); ++k) u.samples[k] += params.td * yd.samples[k];
    }
    return u;
}

SampledSignal fopid_apply_gl(const ControllerParams& params, const SampledSignal& error,
                             Memory memory) {
    params.validate();
    if (error.empty()) throw_invalid("empty error signal");
    SampledSignal u = error;
    u.diverged = false;
    for (auto& v : u.samples) v *= params.kp;
    if (params.ti != 0.0) {
        const SampledSignal yi = gl_differintegrate(error, -params.lambda, memory);
        for (std::size_t k = 0; k < u.size(); ++k) u.samples[k] += params.ti * yi.samples[k];
    }
    if (params.td != 0.0) {
        const SampledSignal yd = gl_differintegrate(error, params.delta, memory);
        for (std::size_t k = 0; k < u.size(); ++k) u.samples[k] += params.td * yd.samples[k];
    }
    return u;
}

std::unique_ptr<ControllerStepper> make_controller_stepper(const ControllerParams& params,
                                                           Realization realization, double step,
                                                           std::size_t samples, int cfe_order,
                                                           Memory memory) {
    params.validate();
    if (!(std::isfinite(step) && step > 0.0)) throw_invalid("sampling step must be positive");
    if (realization == Realization::Cfe) return std::make_unique<CfeStepper>(params, step, cfe_order);
    return std::make_unique<GlStepper>(params, step, samples, memory);
}

}  // namespace fopid
