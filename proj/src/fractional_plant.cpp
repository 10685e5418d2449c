#include "fopid/fractional_plant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fopid/error.hpp"

namespace fopid {
namespace {

void check_terms(const std::vector<FractionalTerm>& terms, const char* side) {
    if (terms.empty()) throw_invalid(std::string(side) + " must have at least one term");
    for (const auto& term : terms) {
        if (!std::isfinite(term.coeff) || !std::isfinite(term.order)) {
            throw_invalid(std::string(side) + " term is not finite");
        }
        if (term.order < 0.0) throw_invalid(std::string(side) + " term has a negative order");
    }
}

double highest_order(const std::vector<FractionalTerm>& terms) {
    double best = -1.0;
    for (const auto& term : terms) {
        if (term.coeff != 0.0) best = std::max(best, term.order);
    }
    return best;
}

// sum_i coeff_i h^-order_i b^(order_i)_j for j = 0..count
std::vector<double> combined_weights(const std::vector<FractionalTerm>& terms, double step,
                                     std::size_t count) {
    std::vector<double> weights(count + 1, 0.0);
    for (const auto& term : terms) {
        if (term.coeff == 0.0) continue;
        const double scale = term.coeff / std::pow(step, term.order);
        const GlCoefficients b = gl_coefficients(term.order, count);
        for (std::size_t j = 0; j <= count; ++j) weights[j] += scale * b.weights[j];
    }
    return weights;
}

bool all_static(const std::vector<FractionalTerm>& terms) {
    return std::all_of(terms.begin(), terms.end(),
                       [](const FractionalTerm& t) { return t.coeff == 0.0 || t.order == 0.0; });
}

}  // namespace

FractionalTransferFunction::FractionalTransferFunction(std::vector<FractionalTerm> numerator,
                                                       std::vector<FractionalTerm> denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    check_terms(numerator_, "numerator");
    check_terms(denominator_, "denominator");
    if (std::none_of(denominator_.begin(), denominator_.end(),
                     [](const FractionalTerm& t) { return t.coeff != 0.0; })) {
        throw_invalid("denominator has no nonzero term");
    }
    if (highest_order(numerator_) > highest_order(denominator_)) {
        throw_invalid("transfer function is improper (numerator order exceeds denominator order)");
    }
}

FractionalTransferFunction FractionalTransferFunction::benchmark_plant() {
    return FractionalTransferFunction({{1.0, 0.0}}, {{0.8, 2.2}, {0.5, 0.9}, {1.0, 0.0}});
}

double dc_gain(const FractionalTransferFunction& plant) {
    double num = 0.0;
    double den = 0.0;
    bool has_constant = false;
    for (const auto& term : plant.denominator()) {
        if (term.order == 0.0 && term.coeff != 0.0) has_constant = true;
        if (term.order == 0.0) den += term.coeff;
    }
    if (!has_constant || den == 0.0) {
        throw Error(ErrorKind::UndefinedGain, "plant has no finite DC gain (no constant denominator term)");
    }
    for (const auto& term : plant.numerator()) {
        if (term.order == 0.0) num += term.coeff;
    }
    return num / den;
}

PlantStepper::PlantStepper(const FractionalTransferFunction& plant, double step,
                           std::size_t samples, Memory memory)
    : capacity_(samples) {
    if (!(std::isfinite(step) && step > 0.0)) throw_invalid("sampling step must be positive");
    const std::size_t count = memory.window(samples == 0 ? 0 : samples - 1);

    const std::vector<double> out_w = combined_weights(plant.denominator(), step, count);
    pivot_ = out_w[0];
    if (pivot_ == 0.0 || !std::isfinite(pivot_)) {
        throw Error(ErrorKind::SingularPlant, "GL pivot of the plant denominator is zero");
    }
    output_side_ = HistoryConvolution(out_w, memory);

    const std::vector<double> in_w = combined_weights(plant.numerator(), step, count);
    feedthrough_ = in_w[0] / pivot_;
    has_input_history_ = !all_static(plant.numerator());
    input_side_ = HistoryConvolution(in_w, memory);

    inputs_.reserve(samples);
    outputs_.reserve(samples);
}

double PlantStepper::free_response() const {
    double rhs = -output_side_.apply(outputs_);
    if (has_input_history_) rhs += input_side_.apply(inputs_);
    return rhs / pivot_;
}

void PlantStepper::commit(double u, double c) {
    if (inputs_.size() >= capacity_) throw_invalid("plant stepper ran past its capacity");
    inputs_.push_back(u);
    outputs_.push_back(c);
}

double PlantStepper::step(double u) {
    const double c = output_for(u);
    commit(u, c);
    return c;
}

SampledSignal simulate_response(const FractionalTransferFunction& plant,
                                const SampledSignal& input, Memory memory) {
    if (input.empty()) throw_invalid("cannot simulate with an empty input");
    PlantStepper stepper(plant, input.step, input.size(), memory);

    SampledSignal out(input.step, {}, input.start_time);
    out.samples.reserve(input.size());
    for (const double u : input.samples) {
        const double c = stepper.output_for(u);
        if (!std::isfinite(c) || std::fabs(c) > kDivergenceLimit) {
            out.diverged = true;
            break;
        }
        stepper.commit(u, c);
        out.samples.push_back(c);
    }
    return out;
}

}  // namespace fopid
