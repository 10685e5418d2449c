#include "fopid/discretizer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fopid/error.hpp"

namespace fopid {
namespace {

// Largest |root| of q_0 z^n + q_1 z^(n-1) + ... + q_n, via the eigenvalues of
// the companion matrix.
double pole_radius(const std::vector<double>& den) {
    const auto n = static_cast<Eigen::Index>(den.size()) - 1;
    if (n <= 0) return 0.0;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) companion(0, i) = -den[i + 1] / den[0];
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    const Eigen::VectorXcd roots = companion.eigenvalues();
    return roots.cwiseAbs().maxCoeff();
}

std::complex<double> polyval_zinv(const std::vector<double>& coeffs, std::complex<double> zinv) {
    std::complex<double> acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * zinv + *it;
    return acc;
}

}  // namespace

std::vector<double> cfe_numerator(double r, int order) {
    // Odd powers of z^-1 carry the sign flip between P and Q; every odd
    // coefficient is an odd polynomial in r and every even one is even, so
    // evaluating at -r yields the denominator bitwise.
    const double r2 = r * r;
    const double r3 = r2 * r;
    switch (order) {
        case 1:
            return {1.0, -r};
        case 3:
            return {15.0, -(15.0 * r), 6.0 * r2 - 9.0, -(r3 - 4.0 * r)};
        case 5: {
            const double r4 = r2 * r2;
            const double r5 = r4 * r;
            return {945.0,
                    -(945.0 * r),
                    420.0 * r2 - 1050.0,
                    -(105.0 * r3 - 735.0 * r),
                    15.0 * r4 - 195.0 * r2 + 225.0,
                    -(r5 - 20.0 * r3 + 64.0 * r)};
        }
        default:
            throw Error(ErrorKind::UnsupportedOrder,
                        "unsupported CFE order " + std::to_string(order) + " (expected 1, 3 or 5)");
    }
}

RationalFilter::RationalFilter() = default;

RationalFilter::RationalFilter(double gain, std::vector<double> num, std::vector<double> den)
    : gain_(gain), num_(std::move(num)), den_(std::move(den)) {
    if (num_.empty() || num_.size() != den_.size()) {
        throw_invalid("filter numerator and denominator must have equal, nonzero length");
    }
    if (den_[0] == 0.0) throw_invalid("filter denominator has q_0 == 0");
    spectral_radius_ = pole_radius(den_);
    stable_ = spectral_radius_ < 1.0;
    reset();
}

void RationalFilter::reset() {
    input_history_.assign(num_.size() - 1, 0.0);
    output_history_.assign(den_.size() - 1, 0.0);
}

double RationalFilter::free_response() const {
    double acc = 0.0;
    for (std::size_t i = 1; i < num_.size(); ++i) {
        acc += gain_ * num_[i] * input_history_[i - 1] - den_[i] * output_history_[i - 1];
    }
    return acc / den_[0];
}

double RationalFilter::step(double u) {
    double forward = num_[0] * u;
    double feedback = 0.0;
    for (std::size_t i = 1; i < num_.size(); ++i) {
        forward += num_[i] * input_history_[i - 1];
        feedback += den_[i] * output_history_[i - 1];
    }
    const double y = (gain_ * forward - feedback) / den_[0];
    push(u, y);
    return y;
}

void RationalFilter::push(double u, double y) {
    if (input_history_.empty()) return;
    std::copy_backward(input_history_.begin(), input_history_.end() - 1, input_history_.end());
    std::copy_backward(output_history_.begin(), output_history_.end() - 1, output_history_.end());
    input_history_[0] = u;
    output_history_[0] = y;
}

RationalFilter cfe_tustin(double r, int order, double period) {
    if (!std::isfinite(r)) throw_invalid("CFE power must be finite");
    if (!(std::isfinite(period) && period > 0.0)) {
        throw_invalid("sampling period must be positive, got " + std::to_string(period));
    }
    std::vector<double> num = cfe_numerator(r, order);
    if (r == 0.0) return RationalFilter::identity();
    std::vector<double> den = cfe_numerator(-r, order);
    return RationalFilter(std::pow(2.0 / period, r), std::move(num), std::move(den));
}

SampledSignal filter_apply(const RationalFilter& filter, const SampledSignal& input) {
    RationalFilter state = filter;
    state.reset();
    SampledSignal out = input;
    out.diverged = false;
    for (double& sample : out.samples) sample = state.step(sample);
    return out;
}

std::complex<double> frequency_response(const RationalFilter& filter, double omega, double period) {
    if (!(period > 0.0) || !(omega > 0.0) || !(omega < std::numbers::pi / period)) {
        throw_invalid("frequency must lie in (0, pi/T)");
    }
    const std::complex<double> zinv = std::polar(1.0, -omega * period);
    return filter.gain() * polyval_zinv(filter.num(), zinv) / polyval_zinv(filter.den(), zinv);
}

}  // namespace fopid
