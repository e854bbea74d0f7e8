// errors.hpp — error taxonomy shared by all qbm modules

#pragma once

#include <stdexcept>
#include <string>

namespace qbm {

enum class ErrorCode {
    InvalidParameter,
    IntermediateDampingUnsupported,
    NonConvergence,
    RegimeGate,
    SingularTime,
    DivergentAtOrigin,
    DegenerateCase,
    WindowTooNarrow,
    NonlinearSeries,
    ConfigError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Thrown when the adaptive quadrature exhausts its subdivision budget.
// Carries the partial result and the achieved error estimate.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, double partial, double est_error)
        : Error(ErrorCode::NonConvergence, what), partial_(partial), est_error_(est_error) {}

    double partial_value() const noexcept { return partial_; }
    double error_estimate() const noexcept { return est_error_; }

private:
    double partial_;
    double est_error_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::IntermediateDampingUnsupported: return "IntermediateDampingUnsupported";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::RegimeGate: return "RegimeGate";
        case ErrorCode::SingularTime: return "SingularTime";
        case ErrorCode::DivergentAtOrigin: return "DivergentAtOrigin";
        case ErrorCode::DegenerateCase: return "DegenerateCase";
        case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
        case ErrorCode::NonlinearSeries: return "NonlinearSeries";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

} // namespace qbm
