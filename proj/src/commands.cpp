#include "fopid/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fopid/config.hpp"
#include "fopid/csv.hpp"
#include "fopid/error.hpp"
#include "fopid/kernels.hpp"

namespace fopid::cli {
namespace {

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::SingularPlant:
        case ErrorKind::UndefinedGain:
            return kExitNumerical;
        default:
            return kExitUsage;
    }
}

// Runs a command body, mapping exceptions to exit codes and messages.
template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

JobConfig resolve_job(const GlobalOptions& options) {
    JobConfig job = options.config ? load_job_config(*options.config) : JobConfig{};
    if (options.seed) job.pso.seed = *options.seed;
    if (options.cfe_order) {
        job.sim.cfe_order = *options.cfe_order;
        job.sim.validate();
    }
    if (options.realization) job.realization = parse_realization(*options.realization);
    if (options.feedback) job.sim.feedback = parse_feedback_mode(*options.feedback);
    return job;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorKind::Config, "cannot write '" + path.string() + "'");
    file << contents;
    if (!file) throw Error(ErrorKind::Config, "failed writing '" + path.string() + "'");
}

}  // namespace

int run_simulate(const GlobalOptions& options, const ControllerOverrides& overrides,
                 std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const JobConfig job = resolve_job(options);
        const std::string path = options.output.value_or(job.output_path);
        const SampledSignal reference = step_reference(job.amplitude, job.sim);

        std::ostringstream body;
        bool diverged = false;
        if (options.open_loop) {
            const SampledSignal response = simulate_response(job.plant, reference, job.sim.memory);
            csv::write_open_loop(body, reference, response);
            diverged = response.diverged;
        } else {
            ControllerParams params = job.params;
            if (overrides.kp) params.kp = *overrides.kp;
            if (overrides.ti) params.ti = *overrides.ti;
            if (overrides.td) params.td = *overrides.td;
            if (overrides.lambda) params.lambda = *overrides.lambda;
            if (overrides.delta) params.delta = *overrides.delta;
            if (job.kind == ControllerKind::Pid && (params.lambda != 1.0 || params.delta != 1.0)) {
                throw Error(ErrorKind::Config, "pid controller fixes lambda = delta = 1");
            }
            params.validate();
            const SimulationTrace trace =
                simulate_closed_loop(job.plant, params, job.realization, reference, job.sim);
            csv::write_trace(body, trace);
            diverged = trace.diverged;
            if (trace.loop_fallback) err << "warning: singular algebraic loop, used delayed feedback\n";
        }

        if (path.empty() || path == "-") {
            out << body.str();
        } else {
            write_file(path, body.str());
        }
        if (diverged) err << "diverged=true\n";
        return static_cast<int>(kExitOk);
    });
}

int run_tune(const GlobalOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const JobConfig job = resolve_job(options);
        const TuningProblem problem = job.problem();
        problem.validate();

        std::filesystem::path dir = options.output.value_or(job.output_dir);
        if (dir.empty()) dir = ".";

        const TuneResult result = tune(problem);
        const SampledSignal reference = step_reference(problem.step_amplitude, problem.sim);
        const SimulationTrace trace = simulate_closed_loop(problem.plant, result.params,
                                                           problem.realization, reference,
                                                           problem.sim);

        std::ostringstream result_csv, history_csv, trace_csv, metadata;
        csv::write_result(result_csv, problem.pso.seed, problem.kind, result);
        csv::write_history(history_csv, result.swarm.history);
        csv::write_trace(trace_csv, trace);
        metadata << "rng=" << kRngName << '\n'
                 << "kernels=" << kernels::backend_name(kernels::active_backend()) << '\n'
                 << "seed=" << problem.pso.seed << '\n'
                 << "kind=" << to_string(problem.kind) << '\n'
                 << "realization=" << to_string(problem.realization) << '\n'
                 << "feedback=" << to_string(problem.sim.feedback) << '\n'
                 << "cfe_order=" << problem.sim.cfe_order << '\n'
                 << "index=" << to_string(problem.index) << '\n'
                 << "evaluations=" << result.swarm.evaluations << '\n';

        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw Error(ErrorKind::Config, "cannot create output directory '" + dir.string() + "'");
        write_file(dir / "result.csv", result_csv.str());
        write_file(dir / "history.csv", history_csv.str());
        write_file(dir / "trace.csv", trace_csv.str());
        write_file(dir / "metadata.txt", metadata.str());

        const auto& p = result.params;
        out << to_string(problem.kind) << " kp=" << csv::format(p.kp, 10)
            << " ti=" << csv::format(p.ti, 10) << " td=" << csv::format(p.td, 10)
            << " lambda=" << csv::format(p.lambda, 10) << " delta=" << csv::format(p.delta, 10)
            << ' ' << to_string(problem.index) << '=' << csv::format(result.fitness, 10) << '\n';
        if (trace.diverged) err << "diverged=true\n";
        return static_cast<int>(kExitOk);
    });
}

int run_discretize(double r, int order, double period, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RationalFilter filter = cfe_tustin(r, order, period);
        out << "gain," << csv::format(filter.gain(), 12) << '\n';
        out << "num";
        for (const double c : filter.num()) out << ',' << csv::format(c, 12);
        out << "\nden";
        for (const double c : filter.den()) out << ',' << csv::format(c, 12);
        out << '\n';
        if (!filter.stable()) {
            err << "warning: approximation has poles on or outside the unit circle (radius "
                << csv::format(filter.spectral_radius(), 6) << ")\n";
        }
        return static_cast<int>(kExitOk);
    });
}

int run_evaluate(const std::string& trace_path, const std::string& index, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&] {
        const IndexKind kind = parse_index_kind(index);
        std::ifstream in(trace_path, std::ios::binary);
        if (!in) throw Error(ErrorKind::Config, "cannot read trace file '" + trace_path + "'");
        const csv::TraceTable table = csv::read_trace(in);
        if (table.diverged) throw Error(ErrorKind::InvalidArgument, "trace is flagged diverged");
        out << csv::format(evaluate_index(kind, table.e, table.step()), 6) << '\n';
        return static_cast<int>(kExitOk);
    });
}

}  // namespace fopid::cli
