#include "fopid/pso.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "fopid/error.hpp"

namespace fopid {
namespace {

// 53 random bits -> [0, 1). Avoids std::uniform_real_distribution, whose
// output is implementation-defined.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

std::size_t worker_count(std::size_t requested, std::size_t jobs) {
    std::size_t n = requested;
    if (n == 0) n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    return std::min(n, jobs);
}

void evaluate_all(const FitnessFunction& fitness, const std::vector<Particle>& swarm,
                  std::vector<double>& out, std::size_t threads) {
    const std::size_t n = swarm.size();
    const std::size_t workers = worker_count(threads, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fitness(swarm[i].position);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        out[i] = fitness(swarm[i].position);
                    } catch (...) {
                        const std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

Bounds Bounds::uniform(std::size_t dims, double lo, double hi, double v0) {
    return Bounds{std::vector<double>(dims, lo), std::vector<double>(dims, hi),
                  std::vector<double>(dims, -v0), std::vector<double>(dims, v0), std::nullopt};
}

void Bounds::validate() const {
    const std::size_t n = lower.size();
    if (n == 0) throw_invalid("bounds must have at least one dimension");
    if (upper.size() != n || velocity_lower.size() != n || velocity_upper.size() != n ||
        (velocity_cap && velocity_cap->size() != n)) {
        throw_invalid("bounds dimension mismatch");
    }
    for (std::size_t d = 0; d < n; ++d) {
        if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]) || lower[d] > upper[d]) {
            throw_invalid("position bounds must be finite with lower <= upper");
        }
        if (!std::isfinite(velocity_lower[d]) || !std::isfinite(velocity_upper[d]) ||
            velocity_lower[d] > velocity_upper[d]) {
            throw_invalid("velocity init bounds must be finite with lower <= upper");
        }
        if (velocity_cap && !((*velocity_cap)[d] > 0.0)) throw_invalid("velocity cap must be positive");
    }
}

void PsoConfig::validate() const {
    if (swarm_size == 0) throw_invalid("swarm_size must be positive");
    if (max_iterations == 0) throw_invalid("max_iterations must be positive");
    if (!(c1 > 0.0) || !(c2 > 0.0)) throw_invalid("c1 and c2 must be positive");
    if (!(inertia_end > 0.0) || !(inertia_start >= inertia_end)) {
        throw_invalid("inertia must satisfy inertia_start >= inertia_end > 0");
    }
}

double PsoConfig::inertia(std::size_t t) const noexcept {
    if (max_iterations <= 1) return inertia_start;
    if (t + 1 >= max_iterations) return inertia_end;
    return inertia_start - (inertia_start - inertia_end) * static_cast<double>(t) /
                               static_cast<double>(max_iterations - 1);
}

SwarmResult pso_minimize(const FitnessFunction& fitness, const Bounds& bounds,
                         const PsoConfig& config) {
    bounds.validate();
    config.validate();
    const std::size_t dims = bounds.dimensions();
    const std::size_t m = config.swarm_size;

    std::mt19937_64 rng(config.seed);
    std::vector<Particle> swarm(m);
    for (auto& p : swarm) {
        p.position.resize(dims);
        p.velocity.resize(dims);
        for (std::size_t d = 0; d < dims; ++d) {
            p.position[d] = uniform(rng, bounds.lower[d], bounds.upper[d]);
        }
        for (std::size_t d = 0; d < dims; ++d) {
            p.velocity[d] = uniform(rng, bounds.velocity_lower[d], bounds.velocity_upper[d]);
        }
        p.personal_best_position = p.position;
    }

    std::vector<double> values(m);
    evaluate_all(fitness, swarm, values, config.threads);
    SwarmResult result;
    result.evaluations = m;

    std::size_t best = 0;
    for (std::size_t i = 0; i < m; ++i) {
        swarm[i].personal_best_fitness = values[i];
        if (values[i] < values[best]) best = i;
    }
    std::vector<double> gbest = swarm[best].position;
    double gbest_fitness = values[best];

    result.history.reserve(config.max_iterations);
    for (std::size_t t = 0; t < config.max_iterations; ++t) {
        const double w = config.inertia(t);
        for (auto& p : swarm) {
            for (std::size_t d = 0; d < dims; ++d) {
                const double phi1 = uniform01(rng);
                const double phi2 = uniform01(rng);
                double v = w * p.velocity[d] +
                           config.c1 * phi1 * (p.personal_best_position[d] - p.position[d]) +
                           config.c2 * phi2 * (gbest[d] - p.position[d]);
                if (bounds.velocity_cap) {
                    const double cap = (*bounds.velocity_cap)[d];
                    v = std::clamp(v, -cap, cap);
                }
                double x = p.position[d] + v;
                if (x < bounds.lower[d]) {
                    x = bounds.lower[d];
                    v = 0.0;
                } else if (x > bounds.upper[d]) {
                    x = bounds.upper[d];
                    v = 0.0;
                }
                p.position[d] = x;
                p.velocity[d] = v;
            }
        }

        evaluate_all(fitness, swarm, values, config.threads);
        result.evaluations += m;

        // Synchronous update in particle order keeps results independent of
        // evaluation threading.
        for (std::size_t i = 0; i < m; ++i) {
            auto& p = swarm[i];
            if (values[i] < p.personal_best_fitness) {
                p.personal_best_fitness = values[i];
                p.personal_best_position = p.position;
            }
            if (values[i] < gbest_fitness) {
                gbest_fitness = values[i];
                gbest = p.position;
            }
        }
        result.history.push_back(gbest_fitness);
        if (config.tolerance && gbest_fitness <= *config.tolerance) break;
    }

    result.best_position = std::move(gbest);
    result.best_fitness = gbest_fitness;
    result.final_swarm = std::move(swarm);
    return result;
}

}  // namespace fopid
