#include "bilgamma/specfun.hpp"

#include "bilgamma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace bilgamma::specfun {

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma requires x > 0");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);  // reentrant: leaves the global signgam alone
#else
    return std::lgamma(x);
#endif
}

namespace {

struct WhittakerPieces {
    double log_prefactor;  // lam*ln z - z/2 - lnGamma(beta+1) + scale
    double integral;       // scaled integral, O(1)
};

WhittakerPieces whittaker_pieces(double lam, double mu, double z, const QuadratureConfig& cfg) {
    const double beta = mu - lam - 0.5;   // power of t
    const double gamma = mu + lam - 0.5;  // power of (1 + t/z)
    if (!(beta > -1.0)) throw DomainError("whittaker_w requires mu - lam > -1/2");
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("whittaker_w requires z > 0");

    auto log_h = [&](double t) { return -t + gamma * std::log1p(t / z); };
    auto log_g = [&](double t) { return beta * std::log(t) + log_h(t); };

    // Stationary points of log g solve t^2 - (beta + gamma - z) t - beta z = 0.
    double peak = -1.0;
    {
        const double b = beta + gamma - z;
        const double disc = b * b + 4.0 * beta * z;
        if (disc >= 0.0) {
            const double root = 0.5 * (b + std::sqrt(disc));
            if (root > 0.0) {
                const double curv = -beta / (root * root) - gamma / ((z + root) * (z + root));
                if (curv < 0.0) peak = root;
            }
        }
    }

    const bool substitute = beta < 2.0;
    double split = 0.0;
    if (substitute) split = (peak > 0.0 && peak < 2.0) ? 0.5 * peak : 1.0;

    double scale = 0.0;
    if (peak > 0.0) scale = log_g(peak);
    if (substitute) scale = std::max(scale, std::max(0.0, gamma) * std::log1p(split / z));
    if (!std::isfinite(scale)) scale = 0.0;

    double total = 0.0;
    double total_err = 0.0;

    if (substitute) {
        // t = u^q with q = 2/(beta+1): t^beta dt = q u du, leaving q u h(u^q).
        const double q = 2.0 / (beta + 1.0);
        const double u_max = std::pow(split, 1.0 / q);
        auto integrand = [&](double u) {
            if (u <= 0.0) return 0.0;
            const double t = std::pow(u, q);
            return q * u * std::exp(log_h(t) - scale);
        };
        QuadratureResult r = integrate(integrand, 0.0, u_max, cfg);
        if (!r.converged) {
            throw NumericalError("whittaker_w: quadrature near the origin did not converge", r.error);
        }
        total += r.value;
        total_err += r.error;
    }

    // Remaining range [split, inf) in the original variable.
    std::vector<double> pts{split};
    double width = 1.0;
    if (peak > split) {
        const double curv = beta / (peak * peak) + gamma / ((z + peak) * (z + peak));
        width = curv > 0.0 ? 1.0 / std::sqrt(curv) : std::max(1.0, peak);
        const double lo = peak - 6.0 * width;
        if (lo > split) pts.push_back(lo);
        pts.push_back(peak);
        pts.push_back(peak + 6.0 * width);
    }
    if (z > split && z < pts.back()) pts.push_back(z);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp(log_g(t) - scale);
    };
    QuadratureResult r = integrate_to_infinity(integrand, pts, std::max(1.0, width), cfg);
    total += r.value;
    total_err += r.error;
    const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    if (!r.converged && total_err > target) {
        std::ostringstream os;
        os << "whittaker_w(" << lam << ", " << mu << ", " << z << "): quadrature did not converge";
        throw NumericalError(os.str(), total_err / std::max(std::abs(total), 1e-300));
    }
    if (!(total > 0.0)) {
        throw NumericalError("whittaker_w: integral underflowed", total_err);
    }
    const double log_prefactor = lam * std::log(z) - 0.5 * z - log_gamma(beta + 1.0) + scale;
    return {log_prefactor, total};
}

struct SeriesValue {
    double log_abs;
    int sign;
};

// Sum of the 2F1 series at 0 <= w < 1 with rescaling, so that the log of the
// sum is available even when individual terms exceed the double range.
SeriesValue sum_2f1_series(double a, double b, double c, double w, double rel_tol) {
    constexpr double kRescale = 1e280;
    const double log_rescale = std::log(kRescale);
    double term = 1.0;
    double sum = 1.0;
    double log_scale = 0.0;
    constexpr long kMaxTerms = 200'000'000L;
    for (long k = 0; k < kMaxTerms; ++k) {
        const double kd = static_cast<double>(k);
        const double ratio = (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * w;
        term *= ratio;
        if (term == 0.0) break;
        sum += term;
        if (std::abs(term) > kRescale || std::abs(sum) > kRescale) {
            term /= kRescale;
            sum /= kRescale;
            log_scale += log_rescale;
        }
        if (kd + 1.0 > std::abs(a) + std::abs(b) + std::abs(c)) {
            // Past this index the term ratios are monotone in k with limit w,
            // so every later ratio is at most max(next, w) in modulus.
            const double next = (a + kd + 1.0) * (b + kd + 1.0) / ((c + kd + 1.0) * (kd + 2.0)) * w;
            const double bound = std::max(std::abs(next), w);
            if (bound < 1.0 && std::abs(term) * bound / (1.0 - bound) <= rel_tol * std::abs(sum)) break;
        }
        if (k + 1 == kMaxTerms) {
            throw NumericalError("hyp2f1: series did not converge within the term cap",
                                 std::abs(term / sum));
        }
    }
    if (sum == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    return {std::log(std::abs(sum)) + log_scale, sum > 0.0 ? 1 : -1};
}

bool is_nonpositive_integer(double c) { return c <= 0.0 && c == std::floor(c); }

SeriesValue hyp2f1_impl(double a, double b, double c, double z, double rel_tol) {
    if (is_nonpositive_integer(c)) throw DomainError("hyp2f1: c must not be a non-positive integer");
    if (z > 0.0) throw DomainError("hyp2f1: only z <= 0 is supported");
    if (!std::isfinite(z)) throw DomainError("hyp2f1: z must be finite");
    if (z == 0.0) return {0.0, 1};
    const double w = z / (z - 1.0);
    const double log_one_minus_z = std::log1p(-z);
    // Pfaff: F(a,b;c;z) = (1-z)^-a F(a, c-b; c; w) = (1-z)^-b F(c-a, b; c; w).
    auto positive = [&](double p, double q) { return p >= 0.0 && q >= 0.0 && c > 0.0; };
    double p = a;
    double q = c - b;
    double power = a;
    if (!positive(a, c - b) && positive(c - a, b)) {
        p = c - a;
        q = b;
        power = b;
    }
    SeriesValue s = sum_2f1_series(p, q, c, w, rel_tol);
    s.log_abs -= power * log_one_minus_z;
    return s;
}

// Li2(y) for y in [-1, 1].
double li2_unit(double y) {
    constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    if (y == 1.0) return pi2_6;
    if (y > 0.5) return pi2_6 - std::log(y) * std::log1p(-y) - li2_unit(1.0 - y);
    if (y < -0.5) return 0.5 * li2_unit(y * y) - li2_unit(-y);
    double term = y;
    double sum = y;
    for (int k = 2; k < 200; ++k) {
        term *= y;
        const double add = term / (static_cast<double>(k) * k);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

double log_whittaker_w(double lam, double mu, double z, const QuadratureConfig& cfg) {
    const WhittakerPieces w = whittaker_pieces(lam, mu, z, cfg);
    return w.log_prefactor + std::log(w.integral);
}

double whittaker_w(double lam, double mu, double z, const QuadratureConfig& cfg) {
    return std::exp(log_whittaker_w(lam, mu, z, cfg));
}

double hyp2f1(double a, double b, double c, double z, double rel_tol) {
    const SeriesValue s = hyp2f1_impl(a, b, c, z, rel_tol);
    return s.sign * std::exp(s.log_abs);
}

double log_hyp2f1(double a, double b, double c, double z, double rel_tol) {
    const SeriesValue s = hyp2f1_impl(a, b, c, z, rel_tol);
    if (s.sign <= 0) throw NumericalError("log_hyp2f1: series sum is not positive");
    return s.log_abs;
}

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw DomainError("exp_integral_e1 requires x > 0");
    if (x > 745.0) return 0.0;
    constexpr double euler = std::numbers::egamma;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (x < 1.0) {
        // E1(x) = -gamma - ln x - sum_{n>=1} (-x)^n / (n n!)
        double term = 1.0;
        double sum = 0.0;
        for (int n = 1; n < 100; ++n) {
            term *= -x / n;
            const double add = term / n;
            sum += add;
            if (std::abs(add) < eps * std::abs(sum)) break;
        }
        return -euler - std::log(x) - sum;
    }
    // Modified Lentz evaluation of the continued fraction for e^x E1(x).
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h * std::exp(-x);
    }
    throw NumericalError("exp_integral_e1: continued fraction did not converge");
}

double dilog(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("dilog requires x >= 0");
    if (x > 2.0) {
        const double l = std::log(x);
        return -0.5 * l * l - dilog(1.0 / x);
    }
    // dilog(x) = sum_k (-1)^k (x-1)^k / k^2 = Li2(1 - x)
    return li2_unit(1.0 - x);
}

double log_exp_integral(double a, double b, double c, double d, double lam) {
    if (!(a <= b)) throw DomainError("log_exp_integral requires a <= b");
    if (!(c > 0.0)) throw DomainError("log_exp_integral requires c > 0");
    if (lam == 0.0) throw DomainError("log_exp_integral requires lam != 0");
    const double ea = std::exp(lam * a);
    const double eb = std::exp(lam * b);
    if (!(c + d * ea > 0.0) || !(c + d * eb > 0.0)) {
        throw DomainError("log_exp_integral requires c + d e^(lam x) > 0 on [a, b]");
    }
    if (a == b) return 0.0;
    const double r = d / c;
    return (b - a) * std::log(c) - dilog(1.0 + r * eb) / lam + dilog(1.0 + r * ea) / lam;
}

}  // namespace bilgamma::specfun
