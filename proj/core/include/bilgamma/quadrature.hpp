#pragma once

#include <span>
#include <type_traits>
#include <utility>

namespace bilgamma {

/// Tolerances shared by every quadrature-backed routine in the library.
struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 200;

    /// Throws DomainError unless abs_tol > 0, rel_tol > 0 and max_subdivisions >= 1.
    void validate() const;
};

/// Process-wide defaults, honouring the BILGAMMA_TOL environment variable
/// ("1e-9" sets rel_tol; "abs_tol=1e-13,rel_tol=1e-9,max_subdivisions=400"
/// sets any subset). Read once on first use.
const QuadratureConfig& default_quadrature();

/// Parses a BILGAMMA_TOL-style override on top of `base`. Throws DomainError
/// on malformed text.
QuadratureConfig parse_tolerance_override(const char* text, QuadratureConfig base);

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

/// Non-owning reference to a callable double(double); cheap to copy.
class FunctionRef {
public:
    template <class F,
              class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, FunctionRef>>>
    FunctionRef(F&& f) noexcept  // NOLINT(google-explicit-constructor)
        : obj_(const_cast<void*>(static_cast<const void*>(&f))),
          call_([](void* o, double x) { return (*static_cast<std::remove_reference_t<F>*>(o))(x); }) {}

    double operator()(double x) const { return call_(obj_, x); }

private:
    void* obj_;
    double (*call_)(void*, double);
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature over [a, b].
QuadratureResult integrate(FunctionRef f, double a, double b, const QuadratureConfig& cfg);

/// Same, with the interval pre-split at the sorted `points` (first and last
/// entries are the integration limits).
QuadratureResult integrate(FunctionRef f, std::span<const double> points,
                           const QuadratureConfig& cfg);

/// Integral over [points.front(), +inf). Finite panels between the points,
/// then a tail panel mapped by t = b + scale * s / (1 - s) with b = points.back().
QuadratureResult integrate_to_infinity(FunctionRef f, std::span<const double> points,
                                       double scale, const QuadratureConfig& cfg);

/// Convenience overload for [a, +inf).
QuadratureResult integrate_to_infinity(FunctionRef f, double a, double scale,
                                       const QuadratureConfig& cfg);

}  // namespace bilgamma
