#pragma once

#include <stdexcept>
#include <string>

namespace hylink
{
// Argument outside the domain of a physical formula (negative linewidth, etc.).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// A numerical kernel failed to reach its tolerance. Carries the best
// estimate available when it gave up.
class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate)
    {
    }

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

// Requested target cannot be reached with the given parameters.
class InfeasibleError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Reading or writing a file failed.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed or invalid run configuration. The message names the key and,
// when known, the line it came from.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace hylink
