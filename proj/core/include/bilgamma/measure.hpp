#pragma once

#include "bilgamma/bgdist.hpp"

#include <limits>

namespace bilgamma {

/// Base law P and target law Q of the process; the two are equivalent
/// exactly when both shape parameters coincide.
struct MeasurePair {
    BilateralGammaParams p_base;
    BilateralGammaParams p_target;

    /// Throws DomainError unless check_equivalence(base, target).
    MeasurePair(const BilateralGammaParams& base, const BilateralGammaParams& target);
};

/// alpha+ and alpha- agree within kParamEqualityTol.
bool check_equivalence(const BilateralGammaParams& p1, const BilateralGammaParams& p2);

/// U_t = ln(dQ/dP) on F_t given the subordinator values (X+_t, X-_t):
/// (lambda1+ - lambda2+) X+ + (lambda1- - lambda2-) X- + t [alpha+ ln(lambda2+/lambda1+) + alpha- ln(lambda2-/lambda1-)].
double log_likelihood_process(const MeasurePair& mp, double x_plus, double x_minus, double t);

/// x - 1 - ln x
double entropy_kernel(double x);

/// E_Q[U_t] = t [alpha+ f(lambda1+/lambda2+) + alpha- f(lambda1-/lambda2-)].
double relative_entropy(const MeasurePair& mp, double t);

/// Radon-Nikodym density dF2/dF1 of the Levy measures at x != 0; for
/// matching shapes exp(-(lambda2 - lambda1) |x|) on each half-line.
double levy_density_ratio(const BilateralGammaParams& p1, const BilateralGammaParams& p2, double x);

/// int (1 - sqrt(Phi))^2 dF1 over {eps <= |x| <= cutoff}. Finite as eps -> 0
/// exactly when the shapes agree.
double hellinger_levy_integral(const BilateralGammaParams& p1, const BilateralGammaParams& p2, double eps,
                               double cutoff = std::numeric_limits<double>::infinity());

}  // namespace bilgamma
