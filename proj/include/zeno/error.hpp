// error.hpp: error kinds raised by the zeno library

#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

enum class ErrorKind {
    OutOfDomain,            // argument outside a tabulated range
    Domain,                 // argument outside an operation's domain (t < 0, tau <= 0, ...)
    NumericalFailure,       // quadrature / root finder / integrator did not converge
    DegenerateSystem,       // e.g. zero coupling where a Zeno time is required
    UnsupportedContinuation,// second-sheet evaluation requested for a tabulated form factor
    Singularity,            // evaluation exactly at a pole
    ModelRegime,            // pole found in the wrong half plane
    InfiniteRate,           // survival probability underflowed to zero
    NoTransition,           // no QZE/IZE crossing within the search bracket
    RecurrenceGuard,        // requested time beyond the trusted horizon of a discretized bath
    Config,                 // invalid run configuration
    Io,                     // unreadable / unwritable file
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace zeno
