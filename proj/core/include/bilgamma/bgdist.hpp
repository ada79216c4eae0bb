#pragma once

#include "bilgamma/quadrature.hpp"

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bilgamma {

/// Parameters (alpha+, lambda+, alpha-, lambda-) of the bilateral Gamma law
/// Gamma(alpha+, lambda+) * Gamma(alpha-, -lambda-), i.e. the law of G+ - G-
/// for independent Gamma variables G+ ~ Gamma(alpha+, lambda+) and
/// G- ~ Gamma(alpha-, lambda-). The field order is fixed as written here
/// everywhere in the library.
struct BilateralGammaParams {
    double alpha_plus;
    double lambda_plus;
    double alpha_minus;
    double lambda_minus;

    /// Validating constructor: every field must be finite and > 0.
    BilateralGammaParams(double ap, double lp, double am, double lm);

    /// Mirror image (alpha-, lambda-, alpha+, lambda+): the law of -X.
    BilateralGammaParams swapped() const;

    /// Law of the increment over a time step t: shapes multiplied by t.
    BilateralGammaParams over_time(double t) const;

    std::string to_string() const;

    friend bool operator==(const BilateralGammaParams&, const BilateralGammaParams&) = default;
};

/// Relative tolerance used when two parameters must "coincide".
inline constexpr double kParamEqualityTol = 1e-9;

/// |a - b| <= tol * max(|a|, |b|).
bool nearly_equal(double a, double b, double tol = kParamEqualityTol);

/// kappa[n-1] holds the n-th cumulant.
struct CumulantVector {
    std::vector<double> kappa;

    /// 1-based access, kappa_n.
    double operator[](int n) const { return kappa.at(static_cast<std::size_t>(n - 1)); }
    int size() const { return static_cast<int>(kappa.size()); }
};

struct VarianceGammaParams {
    double mu;
    double sigma_sq;
    double nu;
};

struct SummaryStats {
    double mean;
    double variance;
    double skewness;
    double kurtosis;  // not excess: normal law has 3
};

std::complex<double> characteristic_function(const BilateralGammaParams& p, double z);

/// Psi(z) = ln E[e^{zX}] on (-lambda-, lambda+). DomainError outside.
double cumulant_generating(const BilateralGammaParams& p, double z);
double psi_prime(const BilateralGammaParams& p, double z);

CumulantVector cumulants(const BilateralGammaParams& p, int up_to = 4);

SummaryStats summary_stats(const BilateralGammaParams& p);

/// Density at x != 0 through the Whittaker representation; the negative
/// half-line follows from f(x; p) = f(-x; p.swapped()). |x| < 1e-12 is
/// rejected with DomainError since the density may be unbounded at 0.
double pdf(const BilateralGammaParams& p, double x, const QuadratureConfig& cfg = default_quadrature());
double log_pdf(const BilateralGammaParams& p, double x, const QuadratureConfig& cfg = default_quadrature());

/// lim_{x -> 0} f(x): finite exactly when alpha+ + alpha- > 1, +inf otherwise.
double density_at_origin(const BilateralGammaParams& p);

/// int_lo^hi weight(x) f(x) dx for lo < hi (either may be infinite). Splits at
/// 0 and removes the power singularity of the density at the origin.
QuadratureResult integrate_pdf(const BilateralGammaParams& p, double lo, double hi, FunctionRef weight,
                               const QuadratureConfig& cfg = default_quadrature());

/// Distribution function by quadrature of the density from the nearer tail.
double cdf(const BilateralGammaParams& p, double x, const QuadratureConfig& cfg = default_quadrature());

/// Distribution function at every point of a nondecreasing grid, integrating
/// the density only across consecutive gaps (the grid is the cache; nothing
/// is shared between calls). Throws DomainError if `xs` is not sorted.
std::vector<double> cdf_sorted(const BilateralGammaParams& p, std::span<const double> xs,
                               const QuadratureConfig& cfg = default_quadrature());

/// Levy density (alpha+/x) e^{-lambda+ x} for x > 0, (alpha-/|x|) e^{-lambda- |x|} for x < 0.
double levy_density(const BilateralGammaParams& p, double x);

/// k(x) = x * levy_density(x): alpha+ e^{-lambda+ x} for x > 0 and
/// -alpha- e^{-lambda- |x|} for x < 0.
double k_function(const BilateralGammaParams& p, double x);

/// Sum of independent laws sharing both rates: shapes add. DomainError if
/// lambda+ or lambda- differ beyond kParamEqualityTol.
BilateralGammaParams convolve(const BilateralGammaParams& p1, const BilateralGammaParams& p2);

/// Law of c X for c > 0: both rates divided by c.
BilateralGammaParams scale(const BilateralGammaParams& p, double c);

/// Variance Gamma parameters when alpha+ == alpha- (within tolerance).
std::optional<VarianceGammaParams> to_variance_gamma(const BilateralGammaParams& p);

/// (1 - i z mu nu + sigma^2 nu z^2 / 2)^(-1/nu)
std::complex<double> vg_characteristic_function(const VarianceGammaParams& vg, double z);

}  // namespace bilgamma
