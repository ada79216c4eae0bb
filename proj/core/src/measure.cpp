#include "bilgamma/measure.hpp"

#include "bilgamma/errors.hpp"

#include <cmath>

namespace bilgamma {

MeasurePair::MeasurePair(const BilateralGammaParams& base, const BilateralGammaParams& target)
    : p_base(base), p_target(target) {
    if (!check_equivalence(base, target)) {
        throw DomainError("MeasurePair: alpha+ and alpha- must agree for equivalent measures");
    }
}

bool check_equivalence(const BilateralGammaParams& p1, const BilateralGammaParams& p2) {
    return nearly_equal(p1.alpha_plus, p2.alpha_plus) && nearly_equal(p1.alpha_minus, p2.alpha_minus);
}

double log_likelihood_process(const MeasurePair& mp, double x_plus, double x_minus, double t) {
    if (!(x_plus >= 0.0) || !(x_minus >= 0.0)) {
        throw DomainError("log_likelihood_process requires x_plus, x_minus >= 0");
    }
    if (!(t >= 0.0)) throw DomainError("log_likelihood_process requires t >= 0");
    const BilateralGammaParams& a = mp.p_base;
    const BilateralGammaParams& b = mp.p_target;
    return (a.lambda_plus - b.lambda_plus) * x_plus + (a.lambda_minus - b.lambda_minus) * x_minus +
           t * (a.alpha_plus * std::log(b.lambda_plus / a.lambda_plus) +
                a.alpha_minus * std::log(b.lambda_minus / a.lambda_minus));
}

double entropy_kernel(double x) {
    if (!(x > 0.0)) throw DomainError("entropy_kernel requires x > 0");
    // x - 1 - ln x via log1p, accurate to full relative precision near x = 1.
    const double y = x - 1.0;
    return y - std::log1p(y);
}

double relative_entropy(const MeasurePair& mp, double t) {
    if (!(t > 0.0)) throw DomainError("relative_entropy requires t > 0");
    const BilateralGammaParams& a = mp.p_base;
    const BilateralGammaParams& b = mp.p_target;
    return t * (a.alpha_plus * entropy_kernel(a.lambda_plus / b.lambda_plus) +
                a.alpha_minus * entropy_kernel(a.lambda_minus / b.lambda_minus));
}

double levy_density_ratio(const BilateralGammaParams& p1, const BilateralGammaParams& p2, double x) {
    return levy_density(p2, x) / levy_density(p1, x);
}

double hellinger_levy_integral(const BilateralGammaParams& p1, const BilateralGammaParams& p2, double eps,
                               double cutoff) {
    if (!(eps > 0.0) || !(cutoff > eps)) throw DomainError("hellinger_levy_integral requires 0 < eps < cutoff");
    auto side = [&](double a1, double l1, double a2, double l2) {
        // (1 - sqrt(phi))^2 k1(x)/x with phi = (a2/a1) e^{-(l2-l1) x}, in log x.
        auto integrand = [&](double s) {
            const double x = std::exp(s);
            const double root = std::sqrt(a2 / a1) * std::exp(-0.5 * (l2 - l1) * x);
            const double d = 1.0 - root;
            return d * d * a1 * std::exp(-l1 * x);
        };
        const double lo = std::log(eps);
        const double hi = std::isinf(cutoff) ? std::log(eps + 60.0 / std::min(l1, l2)) : std::log(cutoff);
        QuadratureConfig cfg = default_quadrature();
        cfg.max_subdivisions = 2000;
        const QuadratureResult r = integrate(integrand, lo, hi, cfg);
        if (!r.converged) throw NumericalError("hellinger_levy_integral: quadrature did not converge", r.error);
        return r.value;
    };
    return side(p1.alpha_plus, p1.lambda_plus, p2.alpha_plus, p2.lambda_plus) +
           side(p1.alpha_minus, p1.lambda_minus, p2.alpha_minus, p2.lambda_minus);
}

}  // namespace bilgamma
