#include "bilgamma/bgdist.hpp"

#include "bilgamma/errors.hpp"
#include "bilgamma/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bilgamma {

namespace {

constexpr double kPdfZeroGuard = 1e-12;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << "BilateralGammaParams: " << name << " must be finite and > 0 (got " << v << ")";
        throw DomainError(os.str());
    }
}

// ln f(x) for x > 0, no guard against tiny x.
double log_pdf_positive(const BilateralGammaParams& p, double x, const QuadratureConfig& cfg) {
    const double ap = p.alpha_plus;
    const double am = p.alpha_minus;
    const double lp = p.lambda_plus;
    const double lm = p.lambda_minus;
    const double half_sum = 0.5 * (ap + am);
    const double rate_sum = lp + lm;
    const double log_prefactor = ap * std::log(lp) + am * std::log(lm) - half_sum * std::log(rate_sum) -
                                 specfun::log_gamma(ap);
    const double log_w =
        specfun::log_whittaker_w(0.5 * (ap - am), 0.5 * (ap + am - 1.0), x * rate_sum, cfg);
    return log_prefactor + (half_sum - 1.0) * std::log(x) - 0.5 * x * (lp - lm) + log_w;
}

// int_lo^hi weight(x) f(x; p) dx with 0 <= lo < hi <= inf.
QuadratureResult integrate_positive(const BilateralGammaParams& p, double lo, double hi, FunctionRef weight,
                                    const QuadratureConfig& cfg) {
    QuadratureResult out{0.0, 0.0, 0, true};
    if (!(hi > lo)) return out;
    const double sd = std::sqrt(cumulants(p, 2)[2]);
    auto density = [&](double x) -> double {
        if (!(x > 1e-300)) return 0.0;
        const double f = std::exp(log_pdf_positive(p, x, cfg));
        return f == 0.0 ? 0.0 : weight(x) * f;
    };
    auto accumulate = [&](const QuadratureResult& r) {
        out.value += r.value;
        out.error += r.error;
        out.subdivisions += r.subdivisions;
        out.converged = out.converged && r.converged;
    };

    double start = lo;
    if (lo == 0.0) {
        // Near the origin f(x) ~ x^(a+b-1); x = u^q with q = 2/(a+b) turns
        // f dx into a regular integrand.
        const double shape_sum = p.alpha_plus + p.alpha_minus;
        const double edge = std::min(hi, 0.25 * sd);
        if (shape_sum < 2.0) {
            const double q = 2.0 / shape_sum;
            auto sub = [&](double u) -> double {
                if (u <= 0.0) return 0.0;
                const double x = std::pow(u, q);
                return density(x) * q * std::pow(u, q - 1.0);
            };
            accumulate(integrate(sub, 0.0, std::pow(edge, 1.0 / q), cfg));
        } else {
            accumulate(integrate(density, 0.0, edge, cfg));
        }
        start = edge;
    }
    if (!(hi > start)) return out;
    if (std::isinf(hi)) {
        std::vector<double> pts{start};
        const double mode_guess = std::max(start, std::abs(p.alpha_plus - 1.0) / p.lambda_plus);
        if (mode_guess > start) pts.push_back(mode_guess);
        accumulate(integrate_to_infinity(density, pts, std::max(sd, 1.0 / p.lambda_plus), cfg));
    } else {
        accumulate(integrate(density, start, hi, cfg));
    }
    return out;
}

QuadratureResult checked(QuadratureResult r, const char* what) {
    if (!r.converged) throw NumericalError(std::string(what) + ": quadrature did not converge", r.error);
    return r;
}

}  // namespace

BilateralGammaParams::BilateralGammaParams(double ap, double lp, double am, double lm)
    : alpha_plus(ap), lambda_plus(lp), alpha_minus(am), lambda_minus(lm) {
    require_positive(ap, "alpha_plus");
    require_positive(lp, "lambda_plus");
    require_positive(am, "alpha_minus");
    require_positive(lm, "lambda_minus");
}

BilateralGammaParams BilateralGammaParams::swapped() const {
    return {alpha_minus, lambda_minus, alpha_plus, lambda_plus};
}

BilateralGammaParams BilateralGammaParams::over_time(double t) const {
    if (!(t > 0.0)) throw DomainError("over_time requires t > 0");
    return {alpha_plus * t, lambda_plus, alpha_minus * t, lambda_minus};
}

std::string BilateralGammaParams::to_string() const {
    std::ostringstream os;
    os.precision(10);
    os << "Gamma(" << alpha_plus << ", " << lambda_plus << "; " << alpha_minus << ", " << lambda_minus << ")";
    return os.str();
}

bool nearly_equal(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::complex<double> characteristic_function(const BilateralGammaParams& p, double z) {
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> lp = std::log(1.0 - i * (z / p.lambda_plus));
    const std::complex<double> lm = std::log(1.0 + i * (z / p.lambda_minus));
    return std::exp(-p.alpha_plus * lp - p.alpha_minus * lm);
}

double cumulant_generating(const BilateralGammaParams& p, double z) {
    if (!(z > -p.lambda_minus && z < p.lambda_plus)) {
        throw DomainError("cumulant_generating requires z in (-lambda-, lambda+)");
    }
    return -p.alpha_plus * std::log1p(-z / p.lambda_plus) - p.alpha_minus * std::log1p(z / p.lambda_minus);
}

double psi_prime(const BilateralGammaParams& p, double z) {
    if (!(z > -p.lambda_minus && z < p.lambda_plus)) {
        throw DomainError("psi_prime requires z in (-lambda-, lambda+)");
    }
    return p.alpha_plus / (p.lambda_plus - z) - p.alpha_minus / (p.lambda_minus + z);
}

CumulantVector cumulants(const BilateralGammaParams& p, int up_to) {
    if (up_to < 1) throw DomainError("cumulants requires up_to >= 1");
    CumulantVector out;
    out.kappa.reserve(static_cast<std::size_t>(up_to));
    double factorial = 1.0;  // (n-1)!
    for (int n = 1; n <= up_to; ++n) {
        if (n > 1) factorial *= n - 1;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        out.kappa.push_back(factorial * (p.alpha_plus / std::pow(p.lambda_plus, n) +
                                         sign * p.alpha_minus / std::pow(p.lambda_minus, n)));
    }
    return out;
}

SummaryStats summary_stats(const BilateralGammaParams& p) {
    const CumulantVector k = cumulants(p, 4);
    return {k[1], k[2], k[3] / std::pow(k[2], 1.5), 3.0 + k[4] / (k[2] * k[2])};
}

double log_pdf(const BilateralGammaParams& p, double x, const QuadratureConfig& cfg) {
    if (!(std::abs(x) >= kPdfZeroGuard) || !std::isfinite(x)) {
        throw DomainError("pdf is not evaluated at |x| < 1e-12");
    }
    if (x > 0.0) return log_pdf_positive(p, x, cfg);
    return log_pdf_positive(p.swapped(), -x, cfg);
}

double pdf(const BilateralGammaParams& p, double x, const QuadratureConfig& cfg) {
    return std::exp(log_pdf(p, x, cfg));
}

double density_at_origin(const BilateralGammaParams& p) {
    const double shape = p.alpha_plus + p.alpha_minus;
    if (!(shape > 1.0)) return std::numeric_limits<double>::infinity();
    // int_0^inf g+(y) g-(y) dy for the two Gamma densities.
    return std::exp(p.alpha_plus * std::log(p.lambda_plus) + p.alpha_minus * std::log(p.lambda_minus) +
                    specfun::log_gamma(shape - 1.0) - specfun::log_gamma(p.alpha_plus) -
                    specfun::log_gamma(p.alpha_minus) - (shape - 1.0) * std::log(p.lambda_plus + p.lambda_minus));
}

QuadratureResult integrate_pdf(const BilateralGammaParams& p, double lo, double hi, FunctionRef weight,
                               const QuadratureConfig& cfg) {
    if (lo > hi) {
        QuadratureResult r = integrate_pdf(p, hi, lo, weight, cfg);
        r.value = -r.value;
        return r;
    }
    QuadratureResult out{0.0, 0.0, 0, true};
    auto accumulate = [&](const QuadratureResult& r) {
        out.value += r.value;
        out.error += r.error;
        out.subdivisions += r.subdivisions;
        out.converged = out.converged && r.converged;
    };
    if (lo < 0.0) {
        const double a = std::max(-hi, 0.0);
        const double b = -lo;
        auto mirrored = [&](double y) { return weight(-y); };
        accumulate(integrate_positive(p.swapped(), a, b, mirrored, cfg));
    }
    if (hi > 0.0) {
        accumulate(integrate_positive(p, std::max(lo, 0.0), hi, weight, cfg));
    }
    return out;
}

double cdf(const BilateralGammaParams& p, double x, const QuadratureConfig& cfg) {
    if (std::isnan(x)) throw DomainError("cdf of NaN");
    auto one = [](double) { return 1.0; };
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (x >= 0.0) {
        const QuadratureResult tail = checked(integrate_positive(p, x, inf, one, cfg), "cdf");
        return std::clamp(1.0 - tail.value, 0.0, 1.0);
    }
    const QuadratureResult tail = checked(integrate_positive(p.swapped(), -x, inf, one, cfg), "cdf");
    return std::clamp(tail.value, 0.0, 1.0);
}

std::vector<double> cdf_sorted(const BilateralGammaParams& p, std::span<const double> xs,
                               const QuadratureConfig& cfg) {
    if (!std::is_sorted(xs.begin(), xs.end())) throw DomainError("cdf_sorted requires a sorted grid");
    std::vector<double> out(xs.size());
    if (xs.empty()) return out;
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto one = [](double) { return 1.0; };
    const auto first_nonneg = static_cast<std::size_t>(
        std::lower_bound(xs.begin(), xs.end(), 0.0) - xs.begin());

    // Negative points: left tail mass accumulated upward.
    if (first_nonneg > 0) {
        const BilateralGammaParams q = p.swapped();
        double mass = checked(integrate_positive(q, -xs[0], inf, one, cfg), "cdf_sorted").value;
        out[0] = mass;
        for (std::size_t i = 1; i < first_nonneg; ++i) {
            if (xs[i] > xs[i - 1]) {
                mass += checked(integrate_positive(q, -xs[i], -xs[i - 1], one, cfg), "cdf_sorted").value;
            }
            out[i] = mass;
        }
    }
    // Non-negative points: right tail mass accumulated downward.
    if (first_nonneg < xs.size()) {
        const std::size_t last = xs.size() - 1;
        double tail = checked(integrate_positive(p, xs[last], inf, one, cfg), "cdf_sorted").value;
        out[last] = 1.0 - tail;
        for (std::size_t i = last; i-- > first_nonneg;) {
            if (xs[i + 1] > xs[i]) {
                tail += checked(integrate_positive(p, xs[i], xs[i + 1], one, cfg), "cdf_sorted").value;
            }
            out[i] = 1.0 - tail;
        }
    }
    double running = 0.0;
    for (double& v : out) {
        v = std::clamp(v, running, 1.0);
        running = v;
    }
    return out;
}

double levy_density(const BilateralGammaParams& p, double x) {
    if (x == 0.0 || std::isnan(x)) throw DomainError("levy_density is undefined at x = 0");
    if (x > 0.0) return p.alpha_plus / x * std::exp(-p.lambda_plus * x);
    return p.alpha_minus / -x * std::exp(p.lambda_minus * x);
}

double k_function(const BilateralGammaParams& p, double x) {
    if (x == 0.0 || std::isnan(x)) throw DomainError("k_function is undefined at x = 0");
    if (x > 0.0) return p.alpha_plus * std::exp(-p.lambda_plus * x);
    return -p.alpha_minus * std::exp(p.lambda_minus * x);
}

BilateralGammaParams convolve(const BilateralGammaParams& p1, const BilateralGammaParams& p2) {
    if (!nearly_equal(p1.lambda_plus, p2.lambda_plus) || !nearly_equal(p1.lambda_minus, p2.lambda_minus)) {
        throw DomainError("convolve requires matching lambda+ and lambda-");
    }
    return {p1.alpha_plus + p2.alpha_plus, p1.lambda_plus, p1.alpha_minus + p2.alpha_minus, p1.lambda_minus};
}

BilateralGammaParams scale(const BilateralGammaParams& p, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("scale requires c > 0");
    return {p.alpha_plus, p.lambda_plus / c, p.alpha_minus, p.lambda_minus / c};
}

std::optional<VarianceGammaParams> to_variance_gamma(const BilateralGammaParams& p) {
    if (!nearly_equal(p.alpha_plus, p.alpha_minus)) return std::nullopt;
    const double a = 0.5 * (p.alpha_plus + p.alpha_minus);
    return VarianceGammaParams{a / p.lambda_plus - a / p.lambda_minus, 2.0 * a / (p.lambda_plus * p.lambda_minus),
                               1.0 / a};
}

std::complex<double> vg_characteristic_function(const VarianceGammaParams& vg, double z) {
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> base = 1.0 - i * z * vg.mu * vg.nu + 0.5 * vg.sigma_sq * vg.nu * z * z;
    return std::exp(-std::log(base) / vg.nu);
}

}  // namespace bilgamma
