#include "bilgamma/pricing.hpp"

#include "bilgamma/errors.hpp"
#include "bilgamma/measure.hpp"
#include "bilgamma/process.hpp"
#include "bilgamma/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bilgamma {

namespace {

void require_market(double spot, double strike, double tau) {
    if (!(spot > 0.0) || !std::isfinite(spot)) throw DomainError("spot must be > 0");
    if (!(strike >= 0.0) || !std::isfinite(strike)) throw DomainError("strike must be >= 0");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be > 0");
}

}  // namespace

MartingaleCheck martingale_check(const BilateralGammaParams& p) {
    if (!(p.lambda_plus > 1.0)) throw DomainError("martingale_check requires lambda+ > 1");
    const double residual =
        -p.alpha_plus * std::log1p(-1.0 / p.lambda_plus) - p.alpha_minus * std::log1p(1.0 / p.lambda_minus);
    return {std::abs(residual) < 1e-10, residual};
}

double phi_lambda(double lambda, double alpha_plus, double alpha_minus) {
    if (!(lambda > 1.0) || !std::isfinite(lambda)) throw DomainError("phi_lambda requires lambda > 1");
    if (!(alpha_plus > 0.0) || !(alpha_minus > 0.0)) throw DomainError("phi_lambda requires positive shapes");
    // (lambda/(lambda-1))^alpha - 1 = expm1(-alpha log1p(-1/lambda))
    return 1.0 / std::expm1(-(alpha_plus / alpha_minus) * std::log1p(-1.0 / lambda));
}

BilateralGammaParams martingale_params(const BilateralGammaParams& p, double lambda) {
    return {p.alpha_plus, lambda, p.alpha_minus, phi_lambda(lambda, p.alpha_plus, p.alpha_minus)};
}

double entropy_of_lambda(const BilateralGammaParams& p, double lambda) {
    return relative_entropy(MeasurePair(p, martingale_params(p, lambda)), 1.0);
}

double min_entropy_residual(const BilateralGammaParams& p, double lambda) {
    if (!(lambda > 1.0)) throw DomainError("min_entropy_residual requires lambda > 1");
    const double ratio = p.alpha_plus / p.alpha_minus;
    const double phi = phi_lambda(lambda, p.alpha_plus, p.alpha_minus);
    // alpha- ratio lambda^(ratio-1) / (lambda-1)^(ratio+1) * (phi - lambda-)
    const double log_weight = (ratio - 1.0) * std::log(lambda) - (ratio + 1.0) * std::log(lambda - 1.0);
    const double minus_part = p.alpha_minus * ratio * std::exp(log_weight) * (phi - p.lambda_minus);
    const double plus_part = p.alpha_plus / lambda * (1.0 - p.lambda_plus / lambda);
    return minus_part + plus_part;
}

double minimal_entropy_lambda(const StockModel& model) {
    const BilateralGammaParams& p = model.p_real;
    constexpr int kScan = 200;
    const double log_lo = std::log(1e-6);  // log(lambda - 1)
    const double log_hi = std::log(1e6 - 1.0);
    auto lambda_at = [&](double s) { return 1.0 + std::exp(s); };
    std::vector<double> grid(kScan);
    std::vector<double> res(kScan);
    for (int k = 0; k < kScan; ++k) {
        grid[k] = log_lo + (log_hi - log_lo) * k / (kScan - 1);
        res[k] = min_entropy_residual(p, lambda_at(grid[k]));
    }
    double best_lambda = 0.0;
    double best_entropy = std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < kScan; ++k) {
        // The derivative crosses from negative to positive at a minimum.
        if (!(res[k] < 0.0 && res[k + 1] >= 0.0)) continue;
        double lo = grid[k];
        double hi = grid[k + 1];
        double mid = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            mid = 0.5 * (lo + hi);
            const double r = min_entropy_residual(p, lambda_at(mid));
            if (std::abs(r) < 1e-10 && hi - lo < 1e-12) break;
            (r < 0.0 ? lo : hi) = mid;
            if (hi - lo < 1e-15) break;
        }
        const double lambda = lambda_at(mid);
        const double e = entropy_of_lambda(p, lambda);
        if (e < best_entropy) {
            best_entropy = e;
            best_lambda = lambda;
        }
    }
    if (best_entropy == std::numeric_limits<double>::infinity()) {
        std::ostringstream os;
        os << "minimal_entropy_lambda: no sign change of the entropy derivative on [1+1e-6, 1e6] for "
           << p.to_string() << " (residual " << res.front() << " at the left end, " << res.back()
           << " at the right end)";
        throw NumericalError(os.str());
    }
    const double e_lo = entropy_of_lambda(p, best_lambda * (1.0 - 1e-4));
    const double e_hi = entropy_of_lambda(p, best_lambda * (1.0 + 1e-4));
    if (e_lo < best_entropy || e_hi < best_entropy) {
        throw NumericalError("minimal_entropy_lambda: root is not a local minimum of the entropy");
    }
    return best_lambda;
}

CallPriceParts call_price_parts(double spot, double strike, double tau, const BilateralGammaParams& q,
                                const QuadratureConfig& cfg) {
    require_market(spot, strike, tau);
    if (!(q.lambda_plus > 1.0)) throw DomainError("call pricing requires lambda+ > 1");
    const double a = q.alpha_plus * tau;
    const double b = q.alpha_minus * tau;
    const double lp = q.lambda_plus;
    const double lm = q.lambda_minus;
    const double log_prefactor = a * std::log(lp) + b * std::log(lm) + specfun::log_gamma(a + b) -
                                 specfun::log_gamma(a) - specfun::log_gamma(b + 1.0);
    CallPriceParts parts{};
    parts.spot_block = std::exp(log_prefactor + specfun::log_hyp2f1(a + b, b, b + 1.0, -(lm + 1.0) / (lp - 1.0)) -
                                (a + b) * std::log(lp - 1.0));
    parts.strike_block =
        std::exp(log_prefactor + specfun::log_hyp2f1(a + b, b, b + 1.0, -lm / lp) - (a + b) * std::log(lp));
    parts.integral = 0.0;
    if (strike != spot) {
        const BilateralGammaParams law = q.over_time(tau);
        if (strike == 0.0) {
            auto payoff = [&](double x) { return spot * std::exp(x); };
            const QuadratureResult r =
                integrate_pdf(law, -std::numeric_limits<double>::infinity(), 0.0, payoff, cfg);
            if (!r.converged) throw NumericalError("call price: quadrature did not converge", r.error);
            parts.integral = r.value;
        } else {
            auto payoff = [&](double x) { return spot * std::exp(x) - strike; };
            const QuadratureResult r = integrate_pdf(law, std::log(strike / spot), 0.0, payoff, cfg);
            if (!r.converged) throw NumericalError("call price: quadrature did not converge", r.error);
            parts.integral = r.value;
        }
    }
    parts.value = spot * parts.spot_block - strike * parts.strike_block + parts.integral;
    return parts;
}

double call_price_closed(double spot, double strike, double tau, const BilateralGammaParams& q, double rate,
                         const QuadratureConfig& cfg) {
    require_market(spot, strike, tau);
    if (!std::isfinite(rate)) throw DomainError("rate must be finite");
    const double growth = std::exp(rate * tau);
    const double forward_spot = rate == 0.0 ? spot : spot * growth;
    const CallPriceParts parts = call_price_parts(forward_spot, strike, tau, q, cfg);
    return std::max(0.0, parts.value / growth);
}

MonteCarloEstimate call_price_mc(double spot, double strike, double tau, const BilateralGammaParams& q,
                                 std::uint64_t seed, std::size_t n_paths, double rate) {
    require_market(spot, strike, tau);
    if (n_paths < 100) throw DomainError("call_price_mc requires n_paths >= 100");
    const SubordinatorDraws d = sample_subordinators(q, tau, n_paths, seed);
    const double discount = std::exp(-rate * tau);
    const double forward_spot = spot * std::exp(rate * tau);
    // Fixed-order chunked sums keep the result independent of n_paths layout.
    double sum = 0.0;
    double sum_sq = 0.0;
    constexpr std::size_t kChunk = 4096;
    for (std::size_t start = 0; start < n_paths; start += kChunk) {
        double s1 = 0.0;
        double s2 = 0.0;
        const std::size_t stop = std::min(n_paths, start + kChunk);
        for (std::size_t i = start; i < stop; ++i) {
            const double payoff = std::max(0.0, forward_spot * std::exp(d.x_plus[i] - d.x_minus[i]) - strike);
            s1 += payoff;
            s2 += payoff * payoff;
        }
        sum += s1;
        sum_sq += s2;
    }
    const auto n = static_cast<double>(n_paths);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq / n - mean * mean) * n / (n - 1.0));
    return {discount * mean, discount * std::sqrt(var / n)};
}

std::vector<PricePoint> price_curve(const StockModel& model, double strike, double tau, int points,
                                    const QuadratureConfig& cfg) {
    if (points < 2) throw DomainError("price_curve requires at least 2 points");
    std::vector<PricePoint> out;
    out.reserve(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        const double u = -3.0 + 8.0 * k / (points - 1);
        const double lambda = 1.0 + std::pow(10.0, u);
        const double price =
            call_price_closed(model.s0, strike, tau, martingale_params(model.p_real, lambda), model.rate, cfg);
        out.push_back({lambda, price});
    }
    return out;
}

double calibrate_lambda(const StockModel& model, const CallQuote& quote, const QuadratureConfig& cfg) {
    require_market(model.s0, quote.strike, quote.maturity);
    const std::vector<PricePoint> curve = price_curve(model, quote.strike, quote.maturity, 161, cfg);
    const double tol_monotone = 1e-9 * model.s0;
    for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
        if (curve[k + 1].price > curve[k].price + tol_monotone) {
            std::ostringstream os;
            os.precision(10);
            os << "calibrate_lambda: price is not monotone in lambda between " << curve[k].lambda << " ("
               << curve[k].price << ") and " << curve[k + 1].lambda << " (" << curve[k + 1].price << ")";
            throw NumericalError(os.str());
        }
    }
    const double high = curve.front().price;
    const double low = curve.back().price;
    if (!(quote.price < high && quote.price > low)) {
        std::ostringstream os;
        os.precision(10);
        os << "calibrate_lambda: quote " << quote.price << " outside the attainable interval (" << low << ", "
           << high << ")";
        throw CalibrationError(os.str(), low, high);
    }
    std::size_t k = 0;
    while (k + 1 < curve.size() && curve[k + 1].price > quote.price) ++k;
    // curve[k].price > quote >= curve[k+1].price
    double lo = std::log(curve[k].lambda - 1.0);
    double hi = std::log(curve[k + 1].lambda - 1.0);
    auto price_at = [&](double s) {
        return call_price_closed(model.s0, quote.strike, quote.maturity,
                                 martingale_params(model.p_real, 1.0 + std::exp(s)), model.rate, cfg);
    };
    double mid = 0.5 * (lo + hi);
    double value = price_at(mid);
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        (value > quote.price ? lo : hi) = mid;
        mid = 0.5 * (lo + hi);
        value = price_at(mid);
    }
    if (!(std::abs(value - quote.price) < 1e-6 * model.s0)) {
        throw NumericalError("calibrate_lambda: bisection stalled before reaching the price tolerance",
                             std::abs(value - quote.price) / model.s0);
    }
    return 1.0 + std::exp(mid);
}

}  // namespace bilgamma
