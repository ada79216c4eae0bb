#pragma once

#include "bilgamma/quadrature.hpp"

namespace bilgamma::specfun {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Whittaker function W_{lam,mu}(z) from its Laplace-type integral
/// representation, valid for mu - lam > -1/2 and z > 0.
///
/// The integral
///   int_0^inf t^(mu-lam-1/2) e^(-t) (1 + t/z)^(mu+lam-1/2) dt
/// is evaluated by adaptive Gauss-Kronrod quadrature. A weak endpoint
/// singularity (exponent in (-1, 0)) is removed by u = t^(exponent+1), the
/// infinite tail is mapped onto [0, 1), and the integrand is rescaled by its
/// peak so that large parameters do not overflow.
///
/// Throws DomainError outside the representation's validity region and
/// NumericalError when the quadrature does not converge.
double whittaker_w(double lam, double mu, double z, const QuadratureConfig& cfg = default_quadrature());

/// ln W_{lam,mu}(z); same method as whittaker_w without the final exp, so it
/// stays finite where W itself under- or overflows.
double log_whittaker_w(double lam, double mu, double z, const QuadratureConfig& cfg = default_quadrature());

/// Gauss hypergeometric series 2F1(a, b; c; z) for z <= 0.
///
/// The argument is moved into [0, 1) by a Pfaff transformation, choosing the
/// variant whose series has non-negative terms when one exists. Throws
/// DomainError if c is a non-positive integer or z > 0, NumericalError if the
/// series fails to converge.
double hyp2f1(double a, double b, double c, double z, double rel_tol = 1e-15);

/// ln 2F1(a, b; c; z) for z <= 0 when the transformed series is positive.
/// Uses rescaled summation so that series with astronomically large terms
/// (z -> -inf combined with large a) remain representable.
double log_hyp2f1(double a, double b, double c, double z, double rel_tol = 1e-15);

/// Exponential integral E1(x), x > 0: power series below 1, continued
/// fraction from 1 upward.
double exp_integral_e1(double x);

/// dilog(x) = -int_1^x ln t / (t - 1) dt for x >= 0.
double dilog(double x);

/// int_a^b ln(c + d e^(lam x)) dx in closed form via dilog. Requires a <= b,
/// c > 0, lam != 0 and c + d e^(lam x) > 0 on [a, b].
double log_exp_integral(double a, double b, double c, double d, double lam);

}  // namespace bilgamma::specfun
