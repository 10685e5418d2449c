#pragma once

#include <span>
#include <string_view>

#include "fopid/controllers.hpp"
#include "fopid/criteria.hpp"
#include "fopid/fractional_plant.hpp"
#include "fopid/loop_engine.hpp"
#include "fopid/pso.hpp"

namespace fopid {

/// pid searches {kp, ti, td} with lambda = delta = 1; fopid searches
/// {kp, ti, td, lambda, delta}.
enum class ControllerKind { Pid, Fopid };

std::string_view to_string(ControllerKind kind);
ControllerKind parse_controller_kind(std::string_view text);

/// Search box for the controller parameters.
struct SearchSpace {
    double gain_lower = 0.0;
    double gain_upper = 500.0;
    double order_lower = 0.0;
    double order_upper = 2.0;
    /// Initial velocities in [-velocity_init, velocity_init]; no cap.
    double velocity_init = 1.0;
};

inline constexpr double kDefaultPenalty = 1e10;

struct TuningProblem {
    FractionalTransferFunction plant = FractionalTransferFunction::benchmark_plant();
    ControllerKind kind = ControllerKind::Fopid;
    Realization realization = Realization::Cfe;
    SimConfig sim;
    IndexKind index = IndexKind::Itae;
    PsoConfig pso;
    SearchSpace space;
    double step_amplitude = 1.0;
    double penalty = kDefaultPenalty;

    void validate() const;
    std::size_t dimensions() const noexcept { return kind == ControllerKind::Pid ? 3 : 5; }
};

/// Box of the search space for the problem's controller kind.
Bounds search_bounds(const TuningProblem& problem);

/// Position vector -> controller parameters (pid fixes lambda = delta = 1).
ControllerParams decode(ControllerKind kind, std::span<const double> position);

using Fitness = FitnessFunction;

/// Index of the closed-loop step response for a parameter vector. Diverged,
/// loop-singular, non-finite or otherwise failing candidates score
/// problem.penalty. Safe to call concurrently.
Fitness make_fitness(const TuningProblem& problem);

struct TuneResult {
    SwarmResult swarm;
    ControllerParams params;
    double fitness = 0.0;
};

TuneResult tune(const TuningProblem& problem);

}  // namespace fopid
