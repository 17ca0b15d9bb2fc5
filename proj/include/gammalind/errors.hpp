#pragma once

#include <stdexcept>
#include <string>

namespace gammalind {

// Numeric values are shared with the C API status codes.
enum class ErrorCode {
    InvalidArgument = 1,
    Parse = 2,
    InconsistentFlux = 3,
    ModeMismatch = 4,
    Numerical = 5,
    TooLarge = 6,
    Io = 7,
    Internal = 8,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace gammalind
