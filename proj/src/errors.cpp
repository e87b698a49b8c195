#include "scpn/errors.hpp"

namespace scpn {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ZeroBody: return "ZeroBody";
    case ErrorKind::BasePointMismatch: return "BasePointMismatch";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::JetOrderExhausted: return "JetOrderExhausted";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LinearDependence: return "LinearDependence";
    case ErrorKind::ParityError: return "ParityError";
    case ErrorKind::SingularBody: return "SingularBody";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::ConfigParseError: return "ConfigParseError";
    case ErrorKind::UnknownCase: return "UnknownCase";
    }
    return "Unknown";
}

static std::string format_message(ErrorKind kind, const std::string& detail)
{
    std::string msg(to_string(kind));
    if (!detail.empty()) {
        msg += ": ";
        msg += detail;
    }
    return msg;
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(format_message(kind, detail)), kind_(kind), detail_(detail)
{
}

void raise(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

} // namespace scpn
