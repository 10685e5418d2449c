#pragma once

#include <stdexcept>
#include <string>

namespace fopid {

enum class ErrorKind {
    InvalidArgument,
    UnsupportedOrder,
    SingularPlant,
    UndefinedGain,
    Config,
    /// Malformed input file (CSV).
    Format,
};

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& message) {
    throw Error(ErrorKind::InvalidArgument, message);
}

}  // namespace fopid
