#pragma once

// PI^lambda D^delta controller  G_c(s) = kp + ti s^-lambda + td s^delta.
// The integer PID is the lambda = delta = 1 point of the same family.

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "fopid/discretizer.hpp"
#include "fopid/gl_calculus.hpp"
#include "fopid/signal.hpp"

namespace fopid {

struct ControllerParams {
    double kp = 0.0;
    double ti = 0.0;
    double td = 0.0;
    double lambda = 1.0;
    double delta = 1.0;

    /// Throws Error(InvalidArgument) for negative or non-finite gains and
    /// orders outside [0, 2].
    void validate() const;

    static ControllerParams pid(double kp, double ti, double td) {
        return {kp, ti, td, 1.0, 1.0};
    }

    friend bool operator==(const ControllerParams&, const ControllerParams&) = default;
};

/// How the fractional operators of the controller are realized in discrete
/// time: Tustin CFE rational filters, or the GL sum.
enum class Realization { Cfe, Gl };

std::string_view to_string(Realization realization);
/// Throws Error(InvalidArgument) for anything but "cfe" / "gl".
Realization parse_realization(std::string_view text);

inline constexpr int kDefaultCfeOrder = 5;

/// u = kp e + ti * CFE(s^-lambda) e + td * CFE(s^delta) e, zero initial state.
/// A zero order degenerates to a pass-through gain.
SampledSignal fopid_apply_cfe(const ControllerParams& params, const SampledSignal& error,
                              int cfe_order = kDefaultCfeOrder);

/// u = kp e + ti * D^-lambda e + td * D^delta e with GL operators.
SampledSignal fopid_apply_gl(const ControllerParams& params, const SampledSignal& error,
                             Memory memory = Memory::full());

/// Streaming controller used inside the closed loop. Each step splits the
/// output as u_k = direct_gain() * e_k + free_response(), which lets the loop
/// solve for e_k exactly before committing it.
class ControllerStepper {
public:
    virtual ~ControllerStepper() = default;
    virtual double direct_gain() const = 0;
    virtual double free_response() const = 0;
    /// Feeds e_k, returns u_k, advances.
    virtual double step(double error) = 0;
};

/// samples bounds the number of steps (GL weights are precomputed for it).
std::unique_ptr<ControllerStepper> make_controller_stepper(const ControllerParams& params,
                                                           Realization realization, double step,
                                                           std::size_t samples,
                                                           int cfe_order = kDefaultCfeOrder,
                                                           Memory memory = Memory::full());

}  // namespace fopid
