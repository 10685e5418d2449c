#pragma once

// Global-best particle swarm minimizer with a linearly decaying inertia
// weight:
//
//   v <- w(t) v + c1 phi1 (pbest - x) + c2 phi2 (gbest - x)
//   x <- x + v
//   w(t) = w_start - (w_start - w_end) t / (max_iterations - 1)
//
// phi1, phi2 ~ U[0,1) are drawn per particle per dimension per iteration.
// Positions are clamped to the box and the clamped velocity component is
// zeroed.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fopid {

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;
    /// Initial velocities are drawn from [velocity_lower, velocity_upper].
    std::vector<double> velocity_lower;
    std::vector<double> velocity_upper;
    /// Optional per-dimension |v| cap, applied before the position update.
    std::optional<std::vector<double>> velocity_cap;

    std::size_t dimensions() const noexcept { return lower.size(); }

    /// Same box in every dimension, velocity init [-v0, v0], no cap.
    static Bounds uniform(std::size_t dims, double lo, double hi, double v0);

    /// Consistent sizes, lower <= upper, velocity_lower <= velocity_upper, all
    /// finite. Equal bounds pin a dimension. Throws Error(InvalidArgument).
    void validate() const;
};

struct PsoConfig {
    std::size_t swarm_size = 10;
    std::size_t max_iterations = 100;
    double c1 = 1.4;
    double c2 = 1.4;
    double inertia_start = 0.9;
    double inertia_end = 0.4;
    std::uint64_t seed = 0;
    /// Stop once the best fitness is <= tolerance (checked after each iteration).
    std::optional<double> tolerance;
    /// Fitness evaluations within an iteration run on up to this many
    /// threads; 0 picks hardware_concurrency. Results do not depend on it.
    std::size_t threads = 0;

    void validate() const;

    /// Inertia weight at iteration t (0-based).
    double inertia(std::size_t t) const noexcept;
};

/// Name of the random engine recorded in result metadata.
inline constexpr std::string_view kRngName = "mt19937_64";

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> personal_best_position;
    double personal_best_fitness = 0.0;
};

struct SwarmResult {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    /// Best fitness after each completed iteration (nonincreasing).
    std::vector<double> history;
    std::size_t evaluations = 0;
    std::vector<Particle> final_swarm;
};

/// Must be safe to call concurrently when threads != 1.
using FitnessFunction = std::function<double(std::span<const double>)>;

/// Throws Error(InvalidArgument) on inconsistent bounds or config.
SwarmResult pso_minimize(const FitnessFunction& fitness, const Bounds& bounds,
                         const PsoConfig& config);

}  // namespace fopid
