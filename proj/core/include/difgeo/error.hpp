#pragma once

#include <stdexcept>
#include <string>

namespace difgeo {

enum class ErrorKind {
    Numeric,        // divergence, non-finite samples
    Parse,          // expression / spec-file syntax
    Domain,         // ln/sqrt/division domain violations in evaluation
    Geometry,       // degenerate charts, undefined frames, hypothesis violations
    Usage,          // bad arguments to an operation
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline Error numeric_error(std::string msg) { return Error(ErrorKind::Numeric, std::move(msg)); }
inline Error parse_error(std::string msg) { return Error(ErrorKind::Parse, std::move(msg)); }
inline Error domain_error(std::string msg) { return Error(ErrorKind::Domain, std::move(msg)); }
inline Error geometry_error(std::string msg) { return Error(ErrorKind::Geometry, std::move(msg)); }
inline Error usage_error(std::string msg) { return Error(ErrorKind::Usage, std::move(msg)); }

} // namespace difgeo
