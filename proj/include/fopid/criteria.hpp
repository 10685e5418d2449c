#pragma once

#include <span>
#include <string_view>

#include "fopid/loop_engine.hpp"

namespace fopid {

enum class IndexKind { Itae, Iae, Ise, Itse };

std::string_view to_string(IndexKind kind);
/// Accepts lower- or upper-case names. Throws Error(InvalidArgument).
IndexKind parse_index_kind(std::string_view text);

/// Left-point rectangular rule with t_k = k h:
///   ITAE = sum t_k |e_k| h,  IAE = sum |e_k| h,
///   ISE  = sum e_k^2 h,      ITSE = sum t_k e_k^2 h.
double evaluate_index(IndexKind kind, std::span<const double> error, double step);

/// Throws Error(InvalidArgument) for a diverged trace.
double evaluate_index(IndexKind kind, const SimulationTrace& trace);

}  // namespace fopid
