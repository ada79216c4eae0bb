#pragma once

#include "bilgamma/bgdist.hpp"
#include "bilgamma/curve.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace bilgamma {

/// Forward rates df(t,T) = alpha(t,T) dt + sigma(t,T) dX_t with Vasicek
/// volatility sigma(t,T) = -sigma_hat e^{-a (T-t)} and X bilateral Gamma.
struct TermStructureConfig {
    double sigma_hat;
    double mean_reversion;  // a
    BilateralGammaParams params;
    InitialCurve initial_curve;
    /// When set, phi1 evaluates both routes and throws NumericalError if they
    /// differ by more than kPhi1CrossCheckTol.
    bool cross_check = false;

    /// Throws DomainError unless sigma_hat >= 0, a > 0 and sigma_hat / a < lambda+.
    void validate() const;
};

inline constexpr double kPhi1CrossCheckTol = 1e-8;

struct ShortRatePath {
    std::vector<double> times;
    std::vector<double> z;  // state process, z[0] = 0
    std::vector<double> r;  // short rate
};

/// (sigma_hat / a)(1 - e^{-a (T-t)}), in [0, sigma_hat / a].
double capital_sigma(const TermStructureConfig& cfg, double t, double T);

/// sigma_hat e^{-a (T-t)} Psi'(Sigma(t,T)).
double hjm_drift(const TermStructureConfig& cfg, double t, double T);

/// f(t,T) given the short rate r_t.
double forward_rate(const TermStructureConfig& cfg, double t, double T, double r_t);

/// a(t,t) = f(0,t) + int_0^t alpha(s,t) ds by adaptive quadrature of hjm_drift.
double short_rate_offset_quadrature(const TermStructureConfig& cfg, double t,
                                    const QuadratureConfig& qcfg = default_quadrature());

/// a(t,t) in closed form, f(0,t) + Psi(Sigma(0,t)).
double short_rate_offset(const TermStructureConfig& cfg, double t);

/// Short rate on `times` (times[0] = 0) driven by the increments dx[i] of X
/// over (times[i], times[i+1]]: Z advances by Z <- e^{-a dt} Z + dX and
/// r = a(t,t) - sigma_hat Z, with a(t,t) from short_rate_offset_quadrature.
ShortRatePath short_rate_from_increments(const TermStructureConfig& cfg, std::span<const double> times,
                                         std::span<const double> dx);

/// Short rate driven by process::simulate_path(params, horizon, step, seed).
ShortRatePath simulate_short_rate(const TermStructureConfig& cfg, double horizon, double step, std::uint64_t seed);

/// (1/a)(1 - e^{-a (T-t)}); depends on a, t and T only.
double phi2(const TermStructureConfig& cfg, double t, double T);

/// phi1 from adaptive quadrature of the two Psi-integrals.
double phi1_quadrature(const TermStructureConfig& cfg, double t, double T,
                       const QuadratureConfig& qcfg = default_quadrature());

/// phi1 in closed form through the dilogarithm.
double phi1_closed(const TermStructureConfig& cfg, double t, double T);

/// phi1_closed, checked against phi1_quadrature when cfg.cross_check is set.
double phi1(const TermStructureConfig& cfg, double t, double T);

/// P(t,T) = exp(phi1 - phi2 r_t).
double bond_price(const TermStructureConfig& cfg, double t, double T, double r_t);

}  // namespace bilgamma
