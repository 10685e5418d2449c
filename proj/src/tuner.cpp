#include "fopid/tuner.hpp"

#include <cmath>
#include <string>

#include "fopid/error.hpp"

namespace fopid {

std::string_view to_string(ControllerKind kind) {
    return kind == ControllerKind::Pid ? "pid" : "fopid";
}

ControllerKind parse_controller_kind(std::string_view text) {
    if (text == "pid") return ControllerKind::Pid;
    if (text == "fopid") return ControllerKind::Fopid;
    throw_invalid("unknown controller kind '" + std::string(text) + "' (expected pid or fopid)");
}

void TuningProblem::validate() const {
    sim.validate();
    pso.validate();
    search_bounds(*this).validate();
    if (!(penalty > 0.0) || !std::isfinite(penalty)) throw_invalid("penalty must be positive");
    if (!std::isfinite(step_amplitude)) throw_invalid("step amplitude must be finite");
    if (space.gain_lower < 0.0) throw_invalid("controller gains cannot be searched below 0");
    if (space.order_lower < 0.0 || space.order_upper > 2.0) {
        throw_invalid("controller orders must be searched inside [0, 2]");
    }
}

Bounds search_bounds(const TuningProblem& problem) {
    const std::size_t dims = problem.dimensions();
    const auto& s = problem.space;
    Bounds b = Bounds::uniform(dims, s.gain_lower, s.gain_upper, s.velocity_init);
    for (std::size_t d = 3; d < dims; ++d) {
        b.lower[d] = s.order_lower;
        b.upper[d] = s.order_upper;
    }
    return b;
}

ControllerParams decode(ControllerKind kind, std::span<const double> x) {
    if (kind == ControllerKind::Pid) {
        if (x.size() != 3) throw_invalid("pid parameter vector must have 3 entries");
        return ControllerParams::pid(x[0], x[1], x[2]);
    }
    if (x.size() != 5) throw_invalid("fopid parameter vector must have 5 entries");
    return {x[0], x[1], x[2], x[3], x[4]};
}

Fitness make_fitness(const TuningProblem& problem) {
    problem.validate();
    const SampledSignal reference = step_reference(problem.step_amplitude, problem.sim);
    return [problem, reference](std::span<const double> x) -> double {
        try {
            const ControllerParams params = decode(problem.kind, x);
            const SimulationTrace trace = simulate_closed_loop(problem.plant, params,
                                                               problem.realization, reference,
                                                               problem.sim);
            if (trace.diverged || trace.loop_fallback) return problem.penalty;
            const double value = evaluate_index(problem.index, trace);
            return std::isfinite(value) ? value : problem.penalty;
        } catch (const Error&) {
            return problem.penalty;
        }
    };
}

TuneResult tune(const TuningProblem& problem) {
    const Fitness fitness = make_fitness(problem);
    TuneResult out;
    out.swarm = pso_minimize(fitness, search_bounds(problem), problem.pso);
    out.params = decode(problem.kind, out.swarm.best_position);
    out.fitness = out.swarm.best_fitness;
    return out;
}

}  // namespace fopid
