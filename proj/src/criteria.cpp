#include "fopid/criteria.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "fopid/error.hpp"
#include "fopid/kernels.hpp"

namespace fopid {

std::string_view to_string(IndexKind kind) {
    switch (kind) {
        case IndexKind::Itae: return "itae";
        case IndexKind::Iae: return "iae";
        case IndexKind::Ise: return "ise";
        case IndexKind::Itse: return "itse";
    }
    return "itae";
}

IndexKind parse_index_kind(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "itae") return IndexKind::Itae;
    if (lower == "iae") return IndexKind::Iae;
    if (lower == "ise") return IndexKind::Ise;
    if (lower == "itse") return IndexKind::Itse;
    throw_invalid("unknown performance index '" + std::string(text) + "'");
}

double evaluate_index(IndexKind kind, std::span<const double> error, double step) {
    if (!(std::isfinite(step) && step > 0.0)) throw_invalid("index step must be positive");
    // sum t_k w(e_k) h = h^2 sum k w(e_k)
    switch (kind) {
        case IndexKind::Itae: return step * step * kernels::ramp_sum_abs(error);
        case IndexKind::Iae: return step * kernels::sum_abs(error);
        case IndexKind::Ise: return step * kernels::sum_sq(error);
        case IndexKind::Itse: return step * step * kernels::ramp_sum_sq(error);
    }
    return 0.0;
}

double evaluate_index(IndexKind kind, const SimulationTrace& trace) {
    if (trace.diverged) throw_invalid("cannot grade a diverged trace");
    return evaluate_index(kind, trace.error, trace.step);
}

}  // namespace fopid
