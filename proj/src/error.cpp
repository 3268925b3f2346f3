#include "zeno/error.hpp"

namespace zeno {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::OutOfDomain: return "out-of-domain";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::NumericalFailure: return "numerical failure";
    case ErrorKind::DegenerateSystem: return "degenerate system";
    case ErrorKind::UnsupportedContinuation: return "unsupported continuation";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::ModelRegime: return "model regime";
    case ErrorKind::InfiniteRate: return "infinite rate";
    case ErrorKind::NoTransition: return "no transition";
    case ErrorKind::RecurrenceGuard: return "recurrence guard";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Io: return "I/O error";
    }
    return "error";
}

} // namespace zeno
