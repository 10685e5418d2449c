#pragma once

// Job files: a small TOML subset (sections, `key = value`, strings, numbers,
// booleans, possibly nested and multi-line arrays, `#` comments). Any key or
// section not listed below is rejected with Error(Config) naming it.
//
//   [plant]       numerator = [[coeff, order], ...]   denominator = [...]
//   [controller]  kind realization kp ti td lambda delta
//                 gain_lower gain_upper order_lower order_upper velocity_init
//   [sim]         step horizon feedback cfe_order memory amplitude index penalty
//   [pso]         swarm_size max_iterations c1 c2 inertia_start inertia_end
//                 seed tolerance threads
//   [output]      path dir
//
// Everything is optional; an empty file describes the reference experiment
// (benchmark plant, FOPID, h = 0.01 s, T = 10 s, ITAE, 10 particles x 100 iterations).

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fopid/tuner.hpp"

namespace fopid {

struct ConfigValue {
    using Array = std::vector<ConfigValue>;
    std::variant<double, std::string, bool, Array> value;
    /// Integer literals keep their exact value (seeds are 64-bit).
    std::optional<long long> integer;
    std::optional<unsigned long long> unsigned_integer;
};

/// section -> key -> value; keys before any section header live under "".
using ConfigTable = std::map<std::string, std::map<std::string, ConfigValue>>;

/// Throws Error(Config) with a line number on syntax errors.
ConfigTable parse_config_table(std::string_view text);

struct JobConfig {
    FractionalTransferFunction plant = FractionalTransferFunction::benchmark_plant();
    ControllerKind kind = ControllerKind::Fopid;
    Realization realization = Realization::Cfe;
    /// Fixed parameters for `simulate`; unset gains default to 0 and unset
    /// orders to 1.
    ControllerParams params;
    bool has_params = false;
    SearchSpace space;
    SimConfig sim;
    IndexKind index = IndexKind::Itae;
    double amplitude = 1.0;
    double penalty = kDefaultPenalty;
    PsoConfig pso;
    std::string output_path;
    std::string output_dir;

    TuningProblem problem() const;
};

JobConfig parse_job_config(std::string_view text);
/// Throws Error(Config) when the file cannot be read.
JobConfig load_job_config(const std::filesystem::path& path);

}  // namespace fopid
