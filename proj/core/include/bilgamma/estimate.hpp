#pragma once

#include "bilgamma/bgdist.hpp"

#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace bilgamma {

/// Raw sample moments m1..m4 (m[0] is m1).
struct SampleMoments {
    std::array<double, 4> m{};
    std::size_t n = 0;
};

/// c_n = kappa_n / (n-1)! estimated from sample moments (c[0] is c1).
struct MomCoefficients {
    std::array<double, 4> c{};
};

/// Observations closer to zero than this are moved to +kZeroReturnShift.
inline constexpr double kZeroReturnShift = 1e-12;

SampleMoments sample_moments(std::span<const double> data);

MomCoefficients cumulants_from_moments(const SampleMoments& m);

/// Exact coefficients kappa_n(p) / (n-1)! of a known law.
MomCoefficients coefficients_of(const BilateralGammaParams& p);

/// Solves the four moment equations for strictly positive parameters.
///
/// The first two equations are linear in (alpha+/lambda+, alpha-/lambda-);
/// they are eliminated symbolically and the remaining pair is solved for
/// (ln lambda+, ln lambda-) by damped Newton from a 6x6 log-spaced grid of
/// starts. Throws EstimationError when no start reaches a positive root.
BilateralGammaParams method_of_moments(const MomCoefficients& c);

/// det dG/d(alpha+, alpha-, lambda+, lambda-) of the polynomial moment system
/// G(c, theta) = 0 evaluated at theta.
double mom_jacobian_determinant(const MomCoefficients& c, const BilateralGammaParams& theta);

/// Closed-form log-likelihood through the Whittaker representation. Zero
/// entries are shifted per kZeroReturnShift. Throws NumericalError naming the
/// offending observation index when a Whittaker evaluation fails.
double log_likelihood(const BilateralGammaParams& p, std::span<const double> data,
                      const QuadratureConfig& cfg = default_quadrature());

struct HookeJeevesOptions {
    double initial_step = 0.25;
    double contraction = 0.5;
    double min_step = 1e-8;
    int max_evaluations = 10000;
};

struct HookeJeevesResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Hooke-Jeeves pattern search maximising `objective`. Exploratory moves try
/// +step then -step on each coordinate in index order; ties keep the current
/// point. Objective values that are NaN or throw count as -inf.
HookeJeevesResult maximize_hooke_jeeves(const std::function<double(std::span<const double>)>& objective,
                                        std::vector<double> x0, const HookeJeevesOptions& options = {});

struct MleResult {
    BilateralGammaParams params;
    double log_likelihood;
    int evaluations;
    bool converged;
};

/// Maximum likelihood by Hooke-Jeeves over ln(alpha+, lambda+, alpha-, lambda-)
/// started at `seed`. The result never has a lower likelihood than the seed.
MleResult mle_fit(std::span<const double> data, const BilateralGammaParams& seed,
                  const HookeJeevesOptions& options = {}, const QuadratureConfig& cfg = default_quadrature());

/// Significance levels with tabulated Kolmogorov critical ratios at n = 750.
inline constexpr std::array<double, 5> kKolmogorovLevels{0.20, 0.10, 0.05, 0.02, 0.01};
inline constexpr std::array<double, 5> kKolmogorovRatios750{0.039, 0.045, 0.050, 0.055, 0.059};

/// Critical ratio for level alpha and sample size n, scaled by sqrt(750/n).
/// Throws DomainError for an untabulated level.
double kolmogorov_critical(double level, std::size_t n);

struct GoodnessOfFit {
    double kolmogorov = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
    std::map<double, bool> accept;  // level -> kolmogorov below critical ratio
};

/// sup |F_emp - F_fit| over both one-sided limits at each sample point, with
/// `fitted` holding F_fit at the sorted sample `sorted_data`.
double kolmogorov_distance(std::span<const double> sorted_data, std::span<const double> fitted);

/// Same, for a fitted cdf with jumps: `fitted_left` holds its left limits.
double kolmogorov_distance(std::span<const double> sorted_data, std::span<const double> fitted,
                           std::span<const double> fitted_left);

/// Distances between the empirical distribution function and `fitted_cdf`.
/// `fitted_cdf` receives a sorted grid and returns the fitted cdf on it; the
/// L1/L2 grid spans [min - 3 sigma, max + 3 sigma]. `fitted_cdf_left`, when
/// set, supplies left limits of a discontinuous fitted cdf.
using CdfOnGrid = std::function<std::vector<double>(std::span<const double>)>;
GoodnessOfFit goodness_of_fit(std::span<const double> data, const CdfOnGrid& fitted_cdf, double sigma,
                              const CdfOnGrid& fitted_cdf_left = {});

GoodnessOfFit goodness_of_fit(std::span<const double> data, const BilateralGammaParams& p,
                              const QuadratureConfig& cfg = default_quadrature());

struct FitReport {
    static constexpr int kSchemaVersion = 1;
    BilateralGammaParams mom_seed{1.0, 1.0, 1.0, 1.0};
    BilateralGammaParams mle{1.0, 1.0, 1.0, 1.0};
    std::string seed_source = "method_of_moments";  // or "heuristic"
    std::size_t n = 0;
    double log_likelihood = 0.0;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    double kolmogorov = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
    std::map<double, bool> test_verdicts;
    bool converged = false;
};

/// Symmetric seed from c2 and c4 alone, used when method_of_moments fails.
BilateralGammaParams heuristic_seed(const MomCoefficients& c);

/// Moments, method-of-moments seed, MLE and goodness of fit in one pass.
FitReport fit(std::span<const double> data, const HookeJeevesOptions& options = {},
              const QuadratureConfig& cfg = default_quadrature());

std::string to_json(const FitReport& report);
FitReport fit_report_from_json(const std::string& text);

}  // namespace bilgamma
