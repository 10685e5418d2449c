#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fopid/gl_calculus.hpp"
#include "fopid/signal.hpp"

namespace fopid {

/// coeff * s^order
struct FractionalTerm {
    double coeff = 0.0;
    double order = 0.0;
};

/// G(s) = sum_i n_i s^beta_i / sum_i d_i s^alpha_i.
class FractionalTransferFunction {
public:
    /// Validates the terms: finite, orders >= 0, a nonzero denominator term,
    /// and a proper system (highest denominator order >= highest numerator
    /// order, among nonzero terms). Throws Error(InvalidArgument).
    FractionalTransferFunction(std::vector<FractionalTerm> numerator,
                               std::vector<FractionalTerm> denominator);

    const std::vector<FractionalTerm>& numerator() const noexcept { return numerator_; }
    const std::vector<FractionalTerm>& denominator() const noexcept { return denominator_; }

    /// 1 / (0.8 s^2.2 + 0.5 s^0.9 + 1)
    static FractionalTransferFunction benchmark_plant();

private:
    std::vector<FractionalTerm> numerator_;
    std::vector<FractionalTerm> denominator_;
};

/// Ratio of the order-0 coefficient sums. Throws Error(UndefinedGain) when
/// the denominator has no nonzero constant term.
double dc_gain(const FractionalTransferFunction& plant);

/// Output magnitude beyond which a simulation is declared diverged.
inline constexpr double kDivergenceLimit = 1e6;

/// Streaming GL realization of a plant. Each side of
///   sum_i d_i D^alpha_i c = sum_i n_i D^beta_i u
/// is collapsed into one combined weight sequence, so a step costs two dot
/// products. The k-th output solves the equation exactly:
///   c_k = (B u_k + H_u(k) - H_c(k)) / A,
/// with pivot A = sum_i d_i h^-alpha_i and feedthrough B = sum_i n_i h^-beta_i.
class PlantStepper {
public:
    /// Precomputes weights for up to `samples` steps. Throws
    /// Error(SingularPlant) when the pivot A is zero.
    PlantStepper(const FractionalTransferFunction& plant, double step, std::size_t samples,
                 Memory memory = Memory::full());

    /// dc_k / du_k
    double feedthrough() const noexcept { return feedthrough_; }

    /// Output at the current step if u_k were zero.
    double free_response() const;

    /// Output at the current step for input u_k, without committing.
    double output_for(double u) const { return feedthrough_ * u + free_response(); }

    /// Records u_k and c_k and advances to step k+1.
    void commit(double u, double c);

    /// Convenience: output_for(u) then commit. Returns c_k.
    double step(double u);

    std::size_t steps_taken() const noexcept { return inputs_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }
    std::span<const double> inputs() const noexcept { return inputs_; }
    std::span<const double> outputs() const noexcept { return outputs_; }

private:
    HistoryConvolution input_side_;
    HistoryConvolution output_side_;
    double pivot_ = 1.0;
    double feedthrough_ = 0.0;
    bool has_input_history_ = false;
    std::size_t capacity_ = 0;
    std::vector<double> inputs_;
    std::vector<double> outputs_;
};

/// Time response of the plant to `input` from rest. Stops at the first
/// sample with |c| > kDivergenceLimit or a non-finite value and flags the
/// result as diverged, keeping only the samples before it.
SampledSignal simulate_response(const FractionalTransferFunction& plant,
                                const SampledSignal& input, Memory memory = Memory::full());

}  // namespace fopid
