#pragma once

#include "bilgamma/bgdist.hpp"

#include <cstdint>
#include <vector>

namespace bilgamma {

/// S_t = s0 exp(rate t + X_t) with X bilateral Gamma under the real-world law.
struct StockModel {
    double s0;
    double rate;
    BilateralGammaParams p_real;
};

struct CallQuote {
    double strike;
    double maturity;  // time to maturity
    double price;
};

struct MartingaleCheck {
    bool holds;
    double residual;
};

/// Residual alpha+ ln(lambda+/(lambda+ - 1)) - alpha- ln((lambda- + 1)/lambda-)
/// of the condition making e^X a martingale; holds iff |residual| < 1e-10.
/// DomainError for lambda+ <= 1.
MartingaleCheck martingale_check(const BilateralGammaParams& p);

/// lambda- = phi(lambda) completing (alpha+, lambda, alpha-) to a martingale
/// law: ((lambda/(lambda-1))^(alpha+/alpha-) - 1)^-1. DomainError for lambda <= 1.
double phi_lambda(double lambda, double alpha_plus, double alpha_minus);

/// Martingale law (alpha+, lambda, alpha-, phi(lambda)) sharing the shapes of p.
BilateralGammaParams martingale_params(const BilateralGammaParams& p, double lambda);

/// Relative entropy per unit time of the martingale law for lambda with respect to p.
double entropy_of_lambda(const BilateralGammaParams& p, double lambda);

/// d/dlambda of entropy_of_lambda in closed form; zero at the minimum.
double min_entropy_residual(const BilateralGammaParams& p, double lambda);

/// lambda in (1, inf) minimising entropy_of_lambda: sign-change scan of
/// min_entropy_residual on 200 log-spaced points of [1 + 1e-6, 1e6], then
/// bisection to |residual| < 1e-10. Throws NumericalError when no minimum is
/// bracketed or the root is not a local minimum.
double minimal_entropy_lambda(const StockModel& model);

/// Pieces of the undiscounted call value with effective shapes a = alpha+ tau,
/// b = alpha- tau: spot_block = int_0^inf e^x f dx and strike_block =
/// int_0^inf f dx from the hypergeometric closed form, integral =
/// int_{ln(K/s)}^0 (s e^x - K) f dx (zero when K = s).
struct CallPriceParts {
    double spot_block;
    double strike_block;
    double integral;
    double value;
};
CallPriceParts call_price_parts(double spot, double strike, double tau, const BilateralGammaParams& q,
                                const QuadratureConfig& cfg = default_quadrature());

/// European call under the martingale law q over time tau, discounted at
/// `rate` via C = e^{-r tau} Pi(s e^{r tau}, K). Negative rounding residue
/// is clamped to 0. DomainError unless lambda+ > 1.
double call_price_closed(double spot, double strike, double tau, const BilateralGammaParams& q, double rate = 0.0,
                         const QuadratureConfig& cfg = default_quadrature());

struct MonteCarloEstimate {
    double estimate;
    double standard_error;
};

/// Average discounted payoff over n_paths terminal draws X_tau (one step of
/// length tau from the process streams). n_paths >= 100.
MonteCarloEstimate call_price_mc(double spot, double strike, double tau, const BilateralGammaParams& q,
                                 std::uint64_t seed, std::size_t n_paths, double rate = 0.0);

struct PricePoint {
    double lambda;
    double price;
};

/// Call prices along the martingale curve at lambda = 1 + 10^u for u on a
/// uniform grid in [-3, 5] with `points` nodes.
std::vector<PricePoint> price_curve(const StockModel& model, double strike, double tau, int points = 161,
                                    const QuadratureConfig& cfg = default_quadrature());

/// lambda with call_price_closed(s0, K, T, martingale_params(p_real, lambda))
/// = quote.price. Brackets on price_curve (which must be nonincreasing),
/// then bisects in ln(lambda - 1). Throws CalibrationError with the
/// attainable price interval when the quote is out of range.
double calibrate_lambda(const StockModel& model, const CallQuote& quote,
                        const QuadratureConfig& cfg = default_quadrature());

}  // namespace bilgamma
