#pragma once

#include <stdexcept>
#include <string>

namespace bilgamma {

/// Argument outside the mathematical domain of an operation, or a violated
/// precondition on parameters.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure (quadrature, series, root search) did not reach
/// its tolerance. Carries the tolerance that was actually achieved.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved = 0.0)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Parameter estimation failed (e.g. no admissible root of the moment system).
class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A market quote cannot be matched by any measure in the scanned family.
class CalibrationError : public std::runtime_error {
public:
    CalibrationError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), lo_(lo), hi_(hi) {}

    double attainable_low() const noexcept { return lo_; }
    double attainable_high() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

}  // namespace bilgamma
