#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scpn {

enum class ErrorKind {
    AlgebraMismatch,
    IndexOutOfRange,
    ZeroBody,
    BasePointMismatch,
    OrderMismatch,
    JetOrderExhausted,
    DimensionMismatch,
    LinearDependence,
    ParityError,
    SingularBody,
    NotUnitary,
    ConfigParseError,
    UnknownCase,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported through this type.
/// what() is "<Kind>: <detail>", which the CLI prints verbatim.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& detail = {});

inline void require(bool cond, ErrorKind kind, const std::string& detail = {})
{
    if (!cond) raise(kind, detail);
}

} // namespace scpn
