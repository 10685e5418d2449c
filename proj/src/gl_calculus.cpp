#include "fopid/gl_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fopid/error.hpp"
#include "fopid/kernels.hpp"

namespace fopid {

SampledSignal::SampledSignal(double step_, std::vector<double> samples_, double start_time_)
    : step(step_), samples(std::move(samples_)), start_time(start_time_) {
    if (!(std::isfinite(step) && step > 0.0)) {
        throw_invalid("sampling step must be positive and finite, got " + std::to_string(step));
    }
}

GlCoefficients gl_coefficients(double alpha, std::size_t count) {
    if (!std::isfinite(alpha)) throw_invalid("GL order must be finite");
    GlCoefficients out{alpha, {}};
    out.weights.resize(count + 1);
    out.weights[0] = 1.0;
    for (std::size_t j = 1; j <= count; ++j) {
        out.weights[j] = (1.0 - (1.0 + alpha) / static_cast<double>(j)) * out.weights[j - 1];
    }
    return out;
}

HistoryConvolution::HistoryConvolution(std::span<const double> weights, Memory memory)
    : memory_(memory) {
    if (weights.empty()) throw_invalid("history convolution needs at least one weight");
    lead_ = weights[0];
    std::size_t tail = weights.size() - 1;
    if (!memory.is_full()) tail = std::min(tail, memory.samples());
    reversed_.resize(tail);
    // reversed_[i] = w_{tail - i}
    for (std::size_t i = 0; i < tail; ++i) reversed_[i] = weights[tail - i];
}

double HistoryConvolution::apply(std::span<const double> past) const {
    const std::size_t window = memory_.window(past.size());
    if (window == 0) return 0.0;
    const std::size_t n = reversed_.size();
    if (window > n) throw_invalid("history longer than the stored GL weights");
    return kernels::dot(std::span<const double>(reversed_).subspan(n - window),
                        past.subspan(past.size() - window));
}

SampledSignal gl_differintegrate(const SampledSignal& signal, double alpha, Memory memory) {
    if (signal.empty()) throw_invalid("cannot differintegrate an empty signal");
    return gl_differintegrate(signal, gl_coefficients(alpha, memory.window(signal.size() - 1)),
                              memory);
}

SampledSignal gl_differintegrate(const SampledSignal& signal, const GlCoefficients& coeffs,
                                 Memory memory) {
    if (signal.empty()) throw_invalid("cannot differintegrate an empty signal");
    if (coeffs.weights.size() < memory.window(signal.size() - 1) + 1) {
        throw_invalid("GL weights do not cover the requested memory window");
    }
    const HistoryConvolution conv(coeffs.weights, memory);
    // Divide by h^alpha rather than multiply by h^-alpha: at alpha = 1 the
    // result is then bitwise the backward difference (x_k - x_{k-1}) / h.
    const double scale = std::pow(signal.step, coeffs.alpha);

    SampledSignal out = signal;
    out.diverged = false;
    const std::span<const double> x(signal.samples);
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double sum = conv.lead() * x[k] + conv.apply(x.first(k));
        out.samples[k] = sum / scale;
    }
    return out;
}

}  // namespace fopid
