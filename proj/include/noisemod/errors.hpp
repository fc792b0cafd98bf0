#pragma once

#include <stdexcept>
#include <string>

namespace noisemod {

/// Thrown when an argument lies outside an operation's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
/// Carries the best estimate reached so callers can still report it.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double error_estimate);

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

/// Throws DomainError with `message` unless `condition` holds.
inline void require(bool condition, const char* message)
{
    if (!condition) [[unlikely]]
        throw DomainError(message);
}

inline void require(bool condition, const std::string& message)
{
    if (!condition) [[unlikely]]
        throw DomainError(message);
}

} // namespace noisemod
