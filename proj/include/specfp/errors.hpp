#ifndef SPECFP_ERRORS_HPP
#define SPECFP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specfp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeometryError : Error {
    using Error::Error;
};

struct TransformError : Error {
    using Error::Error;
};

/// Raised by the expression parser; `position` is a 0-based offset into the source text.
struct ExprError : Error {
    std::size_t position;
    ExprError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct ConfigError : Error {
    using Error::Error;
};

/// A multiplier ratio diverges because the kernel spectrum does not vanish
/// on the resonant set. `where` identifies the offending frequency point.
struct BlowUpError : Error {
    std::string where;
    BlowUpError(const std::string& msg, std::string loc)
        : Error(msg + " at " + loc), where(std::move(loc)) {}
};

struct SolverError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace specfp

#endif
