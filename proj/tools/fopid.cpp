// fopid: tune PID / PI^lambda D^delta controllers, simulate loops, print CFE
// filters and grade traces.

#include <CLI11.hpp>

#include <iostream>

#include "fopid/commands.hpp"

int main(int argc, char** argv) {
    using namespace fopid::cli;

    CLI::App app{"PID and fractional-order PID tuning by particle swarm optimization"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    std::string config, output, realization, feedback;
    std::uint64_t seed = 0;
    int cfe_order = 5;
    auto* config_opt = app.add_option("--config", config, "Job file (TOML subset)");
    auto* seed_opt = app.add_option("--seed", seed, "PSO seed (overrides [pso].seed)");
    auto* output_opt = app.add_option("--output", output, "Output file (simulate) or directory (tune)");
    auto* cfe_opt = app.add_option("--cfe-order", cfe_order, "CFE order for the controller filters")
                        ->check(CLI::IsMember({1, 3, 5}));
    auto* realization_opt = app.add_option("--realization", realization, "Controller realization")
                                ->check(CLI::IsMember({"cfe", "gl"}));
    auto* feedback_opt = app.add_option("--feedback", feedback, "Loop causality")
                             ->check(CLI::IsMember({"algebraic", "delayed"}));
    app.add_flag("--open-loop", global.open_loop, "simulate: drive the plant alone with the reference");

    auto* simulate = app.add_subcommand("simulate", "Closed-loop (or open-loop) step response as CSV");
    ControllerOverrides overrides;
    simulate->add_option("--kp", overrides.kp, "Proportional gain");
    simulate->add_option("--ti", overrides.ti, "Integral gain");
    simulate->add_option("--td", overrides.td, "Derivative gain");
    simulate->add_option("--lambda", overrides.lambda, "Integral order");
    simulate->add_option("--delta", overrides.delta, "Derivative order");

    auto* tune = app.add_subcommand("tune", "Run PSO and write result/history/trace CSVs");

    auto* discretize = app.add_subcommand("discretize", "Print the Tustin CFE filter of s^r");
    double power = 0.0, period = 0.0;
    int order = 5;
    discretize->add_option("r,-r,--power", power, "Power of s (negative for integration)")
        ->required()
        ->allow_extra_args(false);
    discretize->add_option("order,-n,--order", order, "CFE order (1, 3 or 5)")->required();
    discretize->add_option("T,-T,--period", period, "Sampling period in seconds")->required();

    auto* evaluate = app.add_subcommand("evaluate", "Performance index of a trace CSV");
    std::string trace_path, index = "itae";
    evaluate->add_option("trace,--trace", trace_path, "Trace CSV with columns t,r,u,c,e")->required();
    evaluate->add_option("--index", index, "itae, iae, ise or itse");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*config_opt) global.config = config;
    if (*seed_opt) global.seed = seed;
    if (*output_opt) global.output = output;
    if (*cfe_opt) global.cfe_order = cfe_order;
    if (*realization_opt) global.realization = realization;
    if (*feedback_opt) global.feedback = feedback;

    if (*simulate) return run_simulate(global, overrides, std::cout, std::cerr);
    if (*tune) return run_tune(global, std::cout, std::cerr);
    if (*discretize) return run_discretize(power, order, period, std::cout, std::cerr);
    if (*evaluate) return run_evaluate(trace_path, index, std::cout, std::cerr);
    return kExitUsage;
}
