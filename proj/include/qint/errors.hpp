#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace qint {

/// Base of every error raised by the library. Carries the path parameter s
/// when the failure happened while walking a path.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}

    [[nodiscard]] const std::optional<double>& path_parameter() const noexcept { return s_; }
    void set_path_parameter(double s) noexcept {
        if (!s_) s_ = s;
    }

private:
    std::optional<double> s_;
};

/// Inverse of the zero quaternion.
class ZeroDivisorError : public Error {
public:
    using Error::Error;
};

/// u_x is undefined because the point sits on the real axis.
class DegenerateSlice : public Error {
public:
    using Error::Error;
};

/// Point outside a function's domain (radius of convergence, log at zero, pole).
class DomainError : public Error {
public:
    using Error::Error;
};

/// No closed form registered for the requested operation.
class Unsupported : public Error {
public:
    using Error::Error;
};

class MissingReference : public Error {
public:
    using Error::Error;
};

/// Branch tracking saw a point that is not in the slice of the path.
class SliceEscape : public Error {
public:
    using Error::Error;
};

/// Branch tracking saw a per-step argument change larger than pi/2.
class StepTooCoarse : public Error {
public:
    using Error::Error;
};

/// Malformed function/path/quaternion specification.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace qint
