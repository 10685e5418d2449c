#pragma once

// CSV files: comma separated, one header row, '.' decimal separator, LF line
// endings. Comment lines start with '#'.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fopid/loop_engine.hpp"
#include "fopid/pso.hpp"
#include "fopid/signal.hpp"
#include "fopid/tuner.hpp"

namespace fopid::csv {

/// printf("%.*g") with the C locale.
std::string format(double value, int significant_digits);

/// Header `t,r,u,c,e`, 6 significant digits; a diverged trace ends with the
/// comment line `# diverged=true`.
void write_trace(std::ostream& out, const SimulationTrace& trace);

/// Header `t,u,c`; a diverged response ends with `# diverged=true`.
void write_open_loop(std::ostream& out, const SampledSignal& input, const SampledSignal& output);

/// Header `seed,kind,kp,ti,td,lambda,delta,fitness`, one row.
void write_result(std::ostream& out, std::uint64_t seed, ControllerKind kind,
                  const TuneResult& result);

/// Header `iteration,best_fitness`, iterations numbered from 1.
void write_history(std::ostream& out, const std::vector<double>& history);

/// Columns of a trace file.
struct TraceTable {
    std::vector<double> t, r, u, c, e;
    bool diverged = false;

    /// Spacing taken from the first two time stamps (1 for a single row).
    double step() const;
};

/// Throws Error(Format) naming the offending line.
TraceTable read_trace(std::istream& in);

}  // namespace fopid::csv
