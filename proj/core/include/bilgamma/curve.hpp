#pragma once

#include <limits>
#include <span>
#include <vector>

namespace bilgamma {

/// Initial instantaneous forward curve T -> f(0, T): monotone cubic Hermite
/// interpolation (Fritsch-Carlson slopes) through tabulated knots, or a flat
/// rate. Integrals are exact for the interpolant.
class InitialCurve {
public:
    /// Flat curve f(0, T) = rate on [0, inf).
    static InitialCurve flat(double rate);

    /// Knots with strictly increasing times starting at 0; at least 2 knots.
    InitialCurve(std::span<const double> times, std::span<const double> rates);

    double operator()(double t) const;

    /// int_t1^t2 f(0, s) ds
    double integral(double t1, double t2) const;

    double max_time() const { return times_.size() == 1 ? std::numeric_limits<double>::infinity() : times_.back(); }

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& rates() const { return rates_; }

private:
    InitialCurve() = default;

    std::size_t segment(double t) const;
    double integral_from_zero(double t) const;

    std::vector<double> times_;
    std::vector<double> rates_;
    std::vector<double> slopes_;
    std::vector<double> cumulative_;  // int_0^{times_[k]}
};

}  // namespace bilgamma
