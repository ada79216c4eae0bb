#include "bilgamma/curve.hpp"

#include "bilgamma/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bilgamma {

InitialCurve InitialCurve::flat(double rate) {
    if (!std::isfinite(rate)) throw DomainError("InitialCurve: flat rate must be finite");
    InitialCurve c;
    c.times_ = {0.0};
    c.rates_ = {rate};
    c.slopes_ = {0.0};
    c.cumulative_ = {0.0};
    return c;
}

InitialCurve::InitialCurve(std::span<const double> times, std::span<const double> rates)
    : times_(times.begin(), times.end()), rates_(rates.begin(), rates.end()) {
    const std::size_t n = times_.size();
    if (n < 2 || rates_.size() != n) throw DomainError("InitialCurve: need >= 2 knots with matching rates");
    if (times_.front() != 0.0) throw DomainError("InitialCurve: first knot must be at time 0");
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(times_[k]) || !std::isfinite(rates_[k])) throw DomainError("InitialCurve: non-finite knot");
        if (k > 0 && !(times_[k] > times_[k - 1])) throw DomainError("InitialCurve: times must increase strictly");
    }
    std::vector<double> secant(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        secant[k] = (rates_[k + 1] - rates_[k]) / (times_[k + 1] - times_[k]);
    }
    slopes_.assign(n, 0.0);
    slopes_.front() = secant.front();
    slopes_.back() = secant.back();
    for (std::size_t k = 1; k + 1 < n; ++k) {
        slopes_[k] = (secant[k - 1] * secant[k] > 0.0) ? 0.5 * (secant[k - 1] + secant[k]) : 0.0;
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (secant[k] == 0.0) {
            slopes_[k] = 0.0;
            slopes_[k + 1] = 0.0;
            continue;
        }
        const double a = slopes_[k] / secant[k];
        const double b = slopes_[k + 1] / secant[k];
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double tau = 3.0 / std::sqrt(r);
            slopes_[k] = tau * a * secant[k];
            slopes_[k + 1] = tau * b * secant[k];
        }
    }
    cumulative_.assign(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double h = times_[k + 1] - times_[k];
        cumulative_[k + 1] =
            cumulative_[k] + h * (rates_[k] + rates_[k + 1]) / 2.0 + h * h * (slopes_[k] - slopes_[k + 1]) / 12.0;
    }
}

std::size_t InitialCurve::segment(double t) const {
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const auto k = static_cast<std::size_t>(it - times_.begin());
    return std::min(k == 0 ? 0 : k - 1, times_.size() - 2);
}

double InitialCurve::operator()(double t) const {
    if (!(t >= 0.0) || t > max_time()) throw DomainError("InitialCurve: time outside [0, T_max]");
    if (times_.size() == 1) return rates_.front();
    const std::size_t k = segment(t);
    const double h = times_[k + 1] - times_[k];
    const double s = (t - times_[k]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * rates_[k] + (s3 - 2 * s2 + s) * h * slopes_[k] + (-2 * s3 + 3 * s2) * rates_[k + 1] +
           (s3 - s2) * h * slopes_[k + 1];
}

double InitialCurve::integral_from_zero(double t) const {
    if (times_.size() == 1) return rates_.front() * t;
    const std::size_t k = segment(t);
    // Simpson's rule is exact for the cubic piece.
    const double lo = times_[k];
    return cumulative_[k] + (t - lo) / 6.0 * ((*this)(lo) + 4.0 * (*this)(0.5 * (lo + t)) + (*this)(t));
}

double InitialCurve::integral(double t1, double t2) const {
    if (!(t1 >= 0.0) || !(t2 >= 0.0) || t1 > max_time() || t2 > max_time()) {
        throw DomainError("InitialCurve: integral limits outside [0, T_max]");
    }
    return integral_from_zero(t2) - integral_from_zero(t1);
}

}  // namespace bilgamma
