#pragma once

// Subcommand bodies of the `fopid` tool. They take parsed options and
// streams so the test suite can drive them in-process; tools/fopid.cpp only
// does argument parsing.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace fopid::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitNumerical = 3,
};

/// Flags shared by all subcommands; unset flags fall back to the config file
/// and then to the built-in defaults.
struct GlobalOptions {
    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output;
    std::optional<int> cfe_order;
    std::optional<std::string> realization;
    std::optional<std::string> feedback;
    bool open_loop = false;
};

struct ControllerOverrides {
    std::optional<double> kp, ti, td, lambda, delta;
};

/// Writes the closed-loop trace (`t,r,u,c,e`), or the plant-only response
/// (`t,u,c`) with open_loop. Output goes to --output / [output].path, or to
/// `out` when neither is set.
int run_simulate(const GlobalOptions& options, const ControllerOverrides& overrides,
                 std::ostream& out, std::ostream& err);

/// Writes result.csv, history.csv, trace.csv and metadata.txt into the
/// output directory (--output / [output].dir / current directory).
int run_tune(const GlobalOptions& options, std::ostream& out, std::ostream& err);

/// Prints `gain,...`, `num,...`, `den,...` rows for s^r.
int run_discretize(double r, int order, double period, std::ostream& out, std::ostream& err);

/// Prints one performance index of a trace CSV.
int run_evaluate(const std::string& trace_path, const std::string& index, std::ostream& out,
                 std::ostream& err);

}  // namespace fopid::cli
