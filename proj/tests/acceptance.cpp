// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fopid/commands.hpp"
#include "fopid/criteria.hpp"
#include "fopid/discretizer.hpp"
#include "fopid/fractional_plant.hpp"
#include "fopid/gl_calculus.hpp"
#include "fopid/kernels.hpp"
#include "fopid/loop_engine.hpp"
#include "fopid/pso.hpp"
#include "fopid/tuner.hpp"

using namespace fopid;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void detail(const char* fmt, auto... args) {
    std::printf("    ");
    std::printf(fmt, args...);
    std::printf("\n");
}

void verdict(int id, bool pass, const std::string& what) {
    std::printf("[%s] %d %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

const ControllerParams kReferenceFopid{325.9739, 303.3286, 389.4627, 0.6022, 1.6188};

void gl_half_derivative() {
    const auto start = Clock::now();
    const double h = 1e-3;
    std::vector<double> t(1001);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<double>(k) * h;
    const double value = gl_differintegrate(SampledSignal(h, t), 0.5).samples.back();
    const double elapsed = seconds_since(start);
    const double oracle = 2.0 * std::sqrt(1.0 / std::numbers::pi);
    const double rel = std::fabs(value - oracle) / oracle;
    detail("D^0.5 t at t=1: %.6f, analytic %.6f, rel err %.3e, %.4f s", value, oracle, rel, elapsed);
    verdict(1, rel < 0.01 && elapsed < 1.0, "GL half-derivative of t within 1% in under 1 s");
}

void gl_weights() {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double alpha = dist(rng);
        const auto w = gl_coefficients(alpha, 50).weights;
        double num = 1.0, den = 1.0;
        for (int j = 0; j <= 50; ++j) {
            if (j > 0) {
                num *= static_cast<double>(j - 1) - alpha;
                den *= static_cast<double>(j);
            }
            const double want = num / den;
            if (want != 0.0) worst = std::max(worst, std::fabs(w[j] - want) / std::fabs(want));
        }
    }
    detail("worst relative deviation from (-1)^j C(alpha, j): %.3e", worst);
    verdict(2, worst < 1e-12, "GL weights match the binomial form to 1e-12 (100 alphas, j <= 50)");
}

void table_fidelity() {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 2.0);
    bool mirror = true;
    for (int trial = 0; trial < 100; ++trial) {
        const double r = dist(rng);
        for (int order : {1, 3, 5}) {
            mirror = mirror && cfe_tustin(r, order, 0.01).num() == cfe_tustin(-r, order, 0.01).den() &&
                     cfe_tustin(r, order, 0.01).den() == cfe_numerator(-r, order);
        }
    }
    detail("mirror property P(r) == Q(-r) bitwise over 100 r, orders 1/3/5: %s", mirror ? "yes" : "no");

    const double h = 0.01;
    const RationalFilter d = cfe_tustin(1.0, 1, h);
    const bool tustin = d.num() == std::vector<double>{1, -1} && d.den() == std::vector<double>{1, 1} &&
                        std::fabs(d.gain() - 2.0 / h) < 1e-12;
    std::vector<double> ramp(100);
    for (std::size_t k = 0; k < ramp.size(); ++k) ramp[k] = static_cast<double>(k) * h;
    const auto y = filter_apply(d, SampledSignal(h, ramp)).samples;
    double worst = 0.0;
    for (std::size_t k = 2; k < y.size(); ++k) worst = std::max(worst, std::fabs(y[k] - 1.0));
    detail("r=1 order 1 is gain 2/T with P=1-z^-1, Q=1+z^-1: %s", tustin ? "yes" : "no");
    detail("ramp response y[0..5] = %g %g %g %g %g %g; max |y_k - 1| for k >= 2: %.3g", y[0], y[1], y[2], y[3],
           y[4], y[5], worst);
    verdict(3, mirror && tustin && worst < 1e-9,
            "CFE mirror property exact; r=1 order-1 filter maps a ramp to constant 1 after 2 samples");
}

void frequency_fidelity() {
    const RationalFilter f = cfe_tustin(0.5, 5, 0.01);
    double worst = 0.0, worst_w = 0.0;
    for (int i = 0; i <= 900; ++i) {
        const double w = 1.0 + 0.01 * i;
        const double err = std::fabs(std::abs(frequency_response(f, w, 0.01)) / std::sqrt(w) - 1.0);
        if (err > worst) {
            worst = err;
            worst_w = w;
        }
    }
    for (double w : {1.0, 2.0, 5.0, 10.0}) {
        detail("w=%-4g |H|=%.4f  w^0.5=%.4f", w, std::abs(frequency_response(f, w, 0.01)), std::sqrt(w));
    }
    detail("worst relative magnitude error %.1f%% at w=%.2f rad/s", 100.0 * worst, worst_w);
    verdict(4, worst < 0.1, "order-5 CFE of s^0.5 (T=0.01) within 10% of w^0.5 on [1,10] rad/s");
}

void plant_response() {
    SimConfig c;
    c.horizon = 30.0;
    const SampledSignal y = simulate_response(FractionalTransferFunction::benchmark_plant(), step_reference(1.0, c));
    int crossings = 0;
    double peak = 0.0;
    for (std::size_t k = 1; k < y.size(); ++k) {
        if ((y.samples[k - 1] - 1.0) * (y.samples[k] - 1.0) < 0.0) ++crossings;
        peak = std::max(peak, y.samples[k]);
    }
    const double final_value = y.samples.back();
    detail("c(30)=%.5f, peak %.4f, %d crossings of 1.0", final_value, peak, crossings);
    verdict(5, !y.diverged && std::fabs(final_value - 1.0) < 0.02 && crossings >= 2,
            "plant step response settles to 1 within 2% by 30 s with >= 2 crossings of 1");
}

void uncontrolled_itae() {
    SimConfig c;
    const auto trace = simulate_closed_loop(FractionalTransferFunction::benchmark_plant(), ControllerParams{0, 0, 0, 1, 1},
                                            Realization::Cfe, step_reference(1.0, c), c);
    const double itae = evaluate_index(IndexKind::Itae, trace);
    detail("ITAE = %.6f", itae);
    verdict(6, std::fabs(itae - 50.0) <= 0.1, "zero-gain loop ITAE = 50 +- 0.1");
}

void pso_sphere() {
    int solved = 0;
    bool monotone = true;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        PsoConfig cfg;
        cfg.seed = seed;
        const SwarmResult r = pso_minimize(
            [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; },
            Bounds::uniform(3, -5, 5, 1), cfg);
        if (r.best_fitness < 1e-3) ++solved;
        for (std::size_t i = 1; i < r.history.size(); ++i) monotone = monotone && r.history[i] <= r.history[i - 1];
    }
    detail("%d/20 seeds below 1e-3, histories monotone: %s", solved, monotone ? "yes" : "no");
    verdict(7, solved >= 18 && monotone, "PSO on the 3-D sphere reaches < 1e-3 in >= 18/20 seeds");
}

void reproduction() {
    int fopid_ok = 0, pid_ok = 0, fopid_wins = 0;
    double slowest = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        TuningProblem fo;
        fo.pso.seed = seed;
        TuningProblem pid = fo;
        pid.kind = ControllerKind::Pid;
        auto start = Clock::now();
        const TuneResult a = tune(fo);
        slowest = std::max(slowest, seconds_since(start));
        start = Clock::now();
        const TuneResult b = tune(pid);
        slowest = std::max(slowest, seconds_since(start));
        fopid_ok += a.fitness < 0.01;
        pid_ok += b.fitness >= 0.02 && b.fitness <= 0.5;
        fopid_wins += a.fitness < b.fitness;
        const auto& p = a.params;
        detail("seed %llu: FOPID %.6g (kp %.1f ti %.1f td %.1f lambda %.3f delta %.3f) | PID %.6g",
               static_cast<unsigned long long>(seed), a.fitness, p.kp, p.ti, p.td, p.lambda, p.delta, b.fitness);
    }
    detail("(a) FOPID < 0.01: %d/10   (b) PID in [0.02, 0.5]: %d/10   (c) FOPID < PID: %d/10", fopid_ok, pid_ok,
           fopid_wins);
    detail("slowest tuning run %.2f s", slowest);
    verdict(8, fopid_ok >= 8 && pid_ok >= 8 && fopid_wins >= 9 && slowest <= 300.0,
            "tuning on the plant: (a) FOPID < 0.01 in >= 8/10, (b) PID in [0.02,0.5] in >= 8/10, (c) FOPID wins >= 9/10");
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void determinism() {
    std::random_device rd;
    const fs::path root = fs::temp_directory_path() / ("fopid-acceptance-" + std::to_string(rd()));
    fs::create_directories(root);
    bool identical = true;
    for (const char* kind : {"fopid", "pid"}) {
        const fs::path job = root / (std::string(kind) + ".toml");
        std::ofstream(job) << "[controller]\nkind = \"" << kind << "\"\n";
        std::string first[3];
        for (int run = 0; run < 2; ++run) {
            cli::GlobalOptions opt;
            opt.config = job.string();
            opt.seed = 42;
            opt.output = (root / (std::string(kind) + std::to_string(run))).string();
            std::ostringstream out, err;
            if (cli::run_tune(opt, out, err) != cli::kExitOk) {
                identical = false;
                continue;
            }
            const char* names[] = {"result.csv", "history.csv", "trace.csv"};
            for (int i = 0; i < 3; ++i) {
                const std::string text = slurp(fs::path(*opt.output) / names[i]);
                if (run == 0) first[i] = text;
                else identical = identical && !text.empty() && text == first[i];
            }
        }
        detail("%s job, seed 42, two runs: %s", kind, identical ? "identical" : "DIFFERENT");
    }
    std::error_code ec;
    fs::remove_all(root, ec);
    verdict(9, identical, "tune reruns with the same seed give bitwise-identical result/history/trace files");
}

void cross_realization() {
    SimConfig c;
    const auto plant = FractionalTransferFunction::benchmark_plant();
    const auto ref = step_reference(1.0, c);
    const auto cfe = simulate_closed_loop(plant, kReferenceFopid, Realization::Cfe, ref, c);
    const auto gl = simulate_closed_loop(plant, kReferenceFopid, Realization::Gl, ref, c);
    const RationalFilter deriv = cfe_tustin(kReferenceFopid.delta, 5, c.step);
    detail("order-5 CFE of s^%.4f: largest pole modulus %.4f", kReferenceFopid.delta, deriv.spectral_radius());
    if (gl.diverged || cfe.diverged) {
        detail("CFE-5 trace %s (%zu samples), GL trace %s", cfe.diverged ? "diverged" : "finite", cfe.size(),
               gl.diverged ? "diverged" : "finite");
        if (!gl.diverged) detail("GL ITAE = %.6g", evaluate_index(IndexKind::Itae, gl));
        verdict(10, false, "reference FOPID gains: CFE-5 and GL closed-loop ITAE within 20%");
        return;
    }
    const double a = evaluate_index(IndexKind::Itae, cfe), b = evaluate_index(IndexKind::Itae, gl);
    const double rel = std::fabs(a - b) / std::min(a, b);
    detail("CFE-5 ITAE %.6g, GL ITAE %.6g, relative difference %.1f%%", a, b, 100.0 * rel);
    verdict(10, rel < 0.2, "reference FOPID gains: CFE-5 and GL closed-loop ITAE within 20%");
}

}  // namespace

int main() {
    std::printf("kernels: %s\n", std::string(kernels::backend_name(kernels::active_backend())).c_str());
    const std::vector<std::function<void()>> criteria{gl_half_derivative, gl_weights,       table_fidelity,
                                                      frequency_fidelity, plant_response,   uncontrolled_itae,
                                                      pso_sphere,         reproduction,     determinism,
                                                      cross_realization};
    for (const auto& run : criteria) run();
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
