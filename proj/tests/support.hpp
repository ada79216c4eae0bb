#pragma once

#include "bilgamma/bgdist.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>

namespace bilgamma::test {

/// Gamma(shape, rate) density via Boost.
inline double gamma_density(double shape, double rate, double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x -
                    boost::math::lgamma(shape));
}

/// Convolution oracle f(x) = int_0^inf g+(x + y) g-(y) dy by Boost
/// tanh-sinh quadrature (robust to the endpoint singularities of shapes
/// below one), split at the integrand peak located on a fine uniform grid.
inline double convolution_density(const BilateralGammaParams& p, double x) {
    // Law of -X swaps the two Gamma components; this keeps x + y free of cancellation.
    if (x < 0.0) return convolution_density(p.swapped(), -x);
    const double lo = 0.0;
    auto integrand = [&](double y) {
        return gamma_density(p.alpha_plus, p.lambda_plus, x + y) * gamma_density(p.alpha_minus, p.lambda_minus, y);
    };
    const double span =
        (60.0 + 3.0 * (p.alpha_plus + p.alpha_minus)) / (p.lambda_plus + p.lambda_minus);
    const double hi = lo + span;
    double peak = lo;
    double best = -1.0;
    constexpr int kGrid = 20000;
    for (int i = 1; i < kGrid; ++i) {
        const double y = lo + span * i / kGrid;
        const double v = integrand(y);
        if (v > best) {
            best = v;
            peak = y;
        }
    }
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    double total = ts.integrate(integrand, lo, peak, 1e-15) + ts.integrate(integrand, peak, hi, 1e-15);
    total += es.integrate([&](double u) { return integrand(hi + u); }, 0.0, std::numeric_limits<double>::infinity(),
                          1e-15);
    return total;
}

/// Distribution function oracle F(x) = int P(G+ <= x + y) g-(y) dy with the
/// Gamma distribution function from Boost.
inline double convolution_cdf(const BilateralGammaParams& p, double x) {
    const double lo = std::max(0.0, -x);
    auto integrand = [&](double y) {
        return boost::math::gamma_p(p.alpha_plus, p.lambda_plus * (x + y)) *
               gamma_density(p.alpha_minus, p.lambda_minus, y);
    };
    const double span = (60.0 + 3.0 * p.alpha_minus) / p.lambda_minus;
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    double total = ts.integrate(integrand, lo, lo + span, 1e-15);
    total += es.integrate([&](double u) { return integrand(lo + span + u); }, 0.0,
                          std::numeric_limits<double>::infinity(), 1e-15);
    return total;
}

}  // namespace bilgamma::test
