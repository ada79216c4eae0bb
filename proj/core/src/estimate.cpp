#include "bilgamma/estimate.hpp"

#include "bilgamma/errors.hpp"
#include "bilgamma/specfun.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace bilgamma {

namespace {

constexpr std::size_t kSumChunk = 1024;

double shift_zero(double x) { return std::abs(x) < kZeroReturnShift ? kZeroReturnShift : x; }

void require_finite(std::span<const double> data) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!std::isfinite(data[i])) {
            std::ostringstream os;
            os << "non-finite observation at index " << i;
            throw DomainError(os.str());
        }
    }
}

// Reduced moment system in (ln lambda+, ln lambda-). With u = 1/lambda+,
// v = 1/lambda-, A = alpha+ u and B = alpha- v the equations read
//   A - B = c1,  A u + B v = c2,  A u^2 - B v^2 = c3,  A u^3 + B v^3 = c4;
// the first two give A and B, the last two are the residuals here.
struct Reduced {
    double a;
    double b;
    double r1;
    double r2;
    double j11, j12, j21, j22;  // d(r1, r2) / d(ln lambda+, ln lambda-)
};

Reduced reduced_system(const MomCoefficients& cc, double log_lp, double log_lm) {
    const auto& c = cc.c;
    const double u = std::exp(-log_lp);
    const double v = std::exp(-log_lm);
    const double s = u + v;
    const double a = (c[1] + c[0] * v) / s;
    const double b = (c[1] - c[0] * u) / s;
    const double au = -a / s;
    const double av = (c[0] - a) / s;
    const double bu = (-c[0] - b) / s;
    const double bv = -b / s;
    const double scale3 = std::pow(c[1], 1.5);
    const double scale4 = c[1] * c[1];

    Reduced r{};
    r.a = a;
    r.b = b;
    r.r1 = (a * u * u - b * v * v - c[2]) / scale3;
    r.r2 = (a * u * u * u + b * v * v * v - c[3]) / scale4;
    const double r1u = au * u * u + 2.0 * a * u - bu * v * v;
    const double r1v = av * u * u - bv * v * v - 2.0 * b * v;
    const double r2u = au * u * u * u + 3.0 * a * u * u + bu * v * v * v;
    const double r2v = av * u * u * u + bv * v * v * v + 3.0 * b * v * v;
    // du/d ln lambda+ = -u, dv/d ln lambda- = -v
    r.j11 = -u * r1u / scale3;
    r.j12 = -v * r1v / scale3;
    r.j21 = -u * r2u / scale4;
    r.j22 = -v * r2v / scale4;
    return r;
}

struct NewtonRoot {
    double log_lp;
    double log_lm;
    double residual;
};

std::optional<NewtonRoot> newton_from(const MomCoefficients& c, double log_lp, double log_lm) {
    constexpr int kMaxIter = 200;
    constexpr double kTol = 1e-13;
    constexpr double kMaxStep = 3.0;
    Reduced r = reduced_system(c, log_lp, log_lm);
    double norm = std::hypot(r.r1, r.r2);
    for (int it = 0; it < kMaxIter; ++it) {
        if (!std::isfinite(norm)) return std::nullopt;
        if (norm < kTol) return NewtonRoot{log_lp, log_lm, norm};
        const double det = r.j11 * r.j22 - r.j12 * r.j21;
        const double jscale = std::abs(r.j11 * r.j22) + std::abs(r.j12 * r.j21);
        if (!(std::abs(det) > 1e-14 * jscale) || !std::isfinite(det)) return std::nullopt;
        double d1 = -(r.j22 * r.r1 - r.j12 * r.r2) / det;
        double d2 = -(-r.j21 * r.r1 + r.j11 * r.r2) / det;
        const double big = std::max(std::abs(d1), std::abs(d2));
        if (big > kMaxStep) {
            d1 *= kMaxStep / big;
            d2 *= kMaxStep / big;
        }
        double t = 1.0;
        bool moved = false;
        while (t > 1e-10) {
            const Reduced trial = reduced_system(c, log_lp + t * d1, log_lm + t * d2);
            const double trial_norm = std::hypot(trial.r1, trial.r2);
            if (std::isfinite(trial_norm) && trial_norm < norm) {
                log_lp += t * d1;
                log_lm += t * d2;
                r = trial;
                norm = trial_norm;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) return norm < 1e-9 ? std::optional<NewtonRoot>(NewtonRoot{log_lp, log_lm, norm}) : std::nullopt;
    }
    return norm < 1e-9 ? std::optional<NewtonRoot>(NewtonRoot{log_lp, log_lm, norm}) : std::nullopt;
}

// ln W_{lam,mu}(e^u) + e^u / 2 as a Chebyshev series on [u_lo, u_hi]. The
// series is accepted only if it matches direct evaluation at an interleaved
// check grid to within the quadrature tolerance.
class LogWhittakerSeries {
public:
    static std::optional<LogWhittakerSeries> build(double lam, double mu, double u_lo, double u_hi,
                                                   const QuadratureConfig& cfg) {
        if (!(u_hi - u_lo > 1e-6)) return std::nullopt;
        for (int degree : {48, 96, 192}) {
            LogWhittakerSeries s(u_lo, u_hi);
            const int n = degree;
            std::vector<double> f(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                const double x = std::cos(std::numbers::pi * (j + 0.5) / n);
                f[static_cast<std::size_t>(j)] = s.direct(lam, mu, s.to_u(x), cfg);
            }
            s.coef_.assign(static_cast<std::size_t>(n), 0.0);
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int j = 0; j < n; ++j) {
                    acc += f[static_cast<std::size_t>(j)] * std::cos(std::numbers::pi * k * (j + 0.5) / n);
                }
                s.coef_[static_cast<std::size_t>(k)] = (k == 0 ? 1.0 : 2.0) * acc / n;
            }
            bool ok = true;
            for (int j = 0; j <= n && ok; ++j) {
                const double x = std::cos(std::numbers::pi * j / n);
                const double u = s.to_u(x);
                const double exact = s.direct(lam, mu, u, cfg);
                ok = std::abs(s.eval_reduced(x) - exact) <= cfg.rel_tol * std::max(1.0, std::abs(exact));
            }
            if (ok) return s;
        }
        return std::nullopt;
    }

    /// ln W at z = e^u.
    double operator()(double u) const {
        const double x = std::clamp((2.0 * u - (u_hi_ + u_lo_)) / (u_hi_ - u_lo_), -1.0, 1.0);
        return eval_reduced(x) - 0.5 * std::exp(u);
    }

private:
    LogWhittakerSeries(double lo, double hi) : u_lo_(lo), u_hi_(hi) {}

    double to_u(double x) const { return 0.5 * (u_hi_ + u_lo_) + 0.5 * (u_hi_ - u_lo_) * x; }

    static double direct(double lam, double mu, double u, const QuadratureConfig& cfg) {
        const double z = std::exp(u);
        return specfun::log_whittaker_w(lam, mu, z, cfg) + 0.5 * z;
    }

    double eval_reduced(double x) const {
        // Clenshaw recurrence.
        double b1 = 0.0;
        double b2 = 0.0;
        for (std::size_t k = coef_.size(); k-- > 1;) {
            const double b0 = 2.0 * x * b1 - b2 + coef_[k];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + coef_[0];
    }

    double u_lo_;
    double u_hi_;
    std::vector<double> coef_;
};

// Observations per sign above which the Whittaker logarithms come from a
// verified Chebyshev series instead of one quadrature per observation.
constexpr std::size_t kSeriesThreshold = 512;

}  // namespace

SampleMoments sample_moments(std::span<const double> data) {
    if (data.size() < 5) throw DomainError("sample_moments requires at least 5 observations");
    require_finite(data);
    SampleMoments out;
    out.n = data.size();
    for (std::size_t start = 0; start < data.size(); start += kSumChunk) {
        std::array<double, 4> part{};
        const std::size_t stop = std::min(data.size(), start + kSumChunk);
        for (std::size_t i = start; i < stop; ++i) {
            const double x = data[i];
            const double x2 = x * x;
            part[0] += x;
            part[1] += x2;
            part[2] += x2 * x;
            part[3] += x2 * x2;
        }
        for (int k = 0; k < 4; ++k) out.m[k] += part[k];
    }
    for (double& v : out.m) v /= static_cast<double>(out.n);
    return out;
}

MomCoefficients cumulants_from_moments(const SampleMoments& sm) {
    const auto& m = sm.m;
    MomCoefficients out;
    out.c[0] = m[0];
    out.c[1] = m[1] - m[0] * m[0];
    out.c[2] = 0.5 * m[2] - 1.5 * m[0] * m[1] + m[0] * m[0] * m[0];
    out.c[3] = m[3] / 6.0 - 2.0 / 3.0 * m[2] * m[0] - 0.5 * m[1] * m[1] + 2.0 * m[1] * m[0] * m[0] -
               m[0] * m[0] * m[0] * m[0];
    return out;
}

MomCoefficients coefficients_of(const BilateralGammaParams& p) {
    const CumulantVector k = cumulants(p, 4);
    return MomCoefficients{{k[1], k[2], k[3] / 2.0, k[4] / 6.0}};
}

BilateralGammaParams method_of_moments(const MomCoefficients& c) {
    if (!(c.c[1] > 0.0)) throw EstimationError("method_of_moments requires c2 > 0");
    if (!(c.c[3] > 0.0)) throw EstimationError("method_of_moments requires c4 > 0; use a heuristic seed");
    for (double v : c.c) {
        if (!std::isfinite(v)) throw EstimationError("method_of_moments: non-finite coefficient");
    }
    std::optional<NewtonRoot> best;
    std::optional<BilateralGammaParams> best_params;
    for (int i = -1; i <= 4; ++i) {
        for (int j = -1; j <= 4; ++j) {
            const auto root = newton_from(c, i * std::log(10.0), j * std::log(10.0));
            if (!root) continue;
            const Reduced r = reduced_system(c, root->log_lp, root->log_lm);
            // Positivity of A and B excludes the mirrored root.
            if (!(r.a > 0.0) || !(r.b > 0.0)) continue;
            const double lp = std::exp(root->log_lp);
            const double lm = std::exp(root->log_lm);
            const double ap = r.a * lp;
            const double am = r.b * lm;
            if (!std::isfinite(ap) || !std::isfinite(am) || !std::isfinite(lp) || !std::isfinite(lm)) continue;
            if (!best || root->residual < best->residual) {
                best = root;
                best_params = BilateralGammaParams(ap, lp, am, lm);
            }
        }
    }
    if (!best_params) {
        throw EstimationError("method_of_moments: no strictly positive root found; fall back to a heuristic seed");
    }
    return *best_params;
}

double mom_jacobian_determinant(const MomCoefficients& cc, const BilateralGammaParams& t) {
    const auto& c = cc.c;
    const double ap = t.alpha_plus;
    const double am = t.alpha_minus;
    const double lp = t.lambda_plus;
    const double lm = t.lambda_minus;
    // Row n: d/d(alpha+, alpha-, lambda+, lambda-) of
    //   alpha+ lm^n + s alpha- lp^n - c_n lp^n lm^n,  s = (-1)^n.
    double jac[4][4];
    for (int n = 1; n <= 4; ++n) {
        const double s = (n % 2 == 0) ? 1.0 : -1.0;
        const double cn = c[n - 1];
        const double lpn = std::pow(lp, n);
        const double lmn = std::pow(lm, n);
        jac[n - 1][0] = lmn;
        jac[n - 1][1] = s * lpn;
        jac[n - 1][2] = s * am * n * std::pow(lp, n - 1) - cn * n * std::pow(lp, n - 1) * lmn;
        jac[n - 1][3] = ap * n * std::pow(lm, n - 1) - cn * lpn * n * std::pow(lm, n - 1);
    }
    // Gaussian elimination with partial pivoting.
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::abs(jac[r][col]) > std::abs(jac[piv][col])) piv = r;
        }
        if (jac[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            for (int k = 0; k < 4; ++k) std::swap(jac[piv][k], jac[col][k]);
            det = -det;
        }
        det *= jac[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const double f = jac[r][col] / jac[col][col];
            for (int k = col; k < 4; ++k) jac[r][k] -= f * jac[col][k];
        }
    }
    return det;
}

BilateralGammaParams heuristic_seed(const MomCoefficients& c) {
    if (!(c.c[1] > 0.0)) throw EstimationError("heuristic_seed requires c2 > 0");
    // Symmetric law: c2 = 2 alpha / lambda^2 and c4 = 2 alpha / lambda^4.
    double lambda = std::sqrt(2.0 / c.c[1]);
    if (c.c[3] > 0.0) lambda = std::sqrt(c.c[1] / c.c[3]);
    const double alpha = 0.5 * c.c[1] * lambda * lambda;
    return {alpha, lambda, alpha, lambda};
}

double log_likelihood(const BilateralGammaParams& p, std::span<const double> data, const QuadratureConfig& cfg) {
    if (data.empty()) throw DomainError("log_likelihood requires data");
    require_finite(data);
    const double ap = p.alpha_plus;
    const double am = p.alpha_minus;
    const double lp = p.lambda_plus;
    const double lm = p.lambda_minus;
    const double rate_sum = lp + lm;
    const double mu = 0.5 * (ap + am - 1.0);
    const double lam_pos = 0.5 * (ap - am);

    std::size_t n_pos = 0;
    double log_lo[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    double log_hi[2] = {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (double raw : data) {
        const double x = shift_zero(raw);
        const int side = x > 0.0 ? 0 : 1;
        if (side == 0) ++n_pos;
        const double u = std::log(std::abs(x) * rate_sum);
        log_lo[side] = std::min(log_lo[side], u);
        log_hi[side] = std::max(log_hi[side], u);
    }
    const std::size_t count[2] = {n_pos, data.size() - n_pos};
    std::optional<LogWhittakerSeries> series[2];
    for (int side = 0; side < 2; ++side) {
        if (count[side] >= kSeriesThreshold) {
            series[side] = LogWhittakerSeries::build(side == 0 ? lam_pos : -lam_pos, mu, log_lo[side],
                                                     log_hi[side], cfg);
        }
    }

    double sum_log_abs = 0.0;
    double sum_x = 0.0;
    double sum_log_w = 0.0;
    for (std::size_t start = 0; start < data.size(); start += kSumChunk) {
        const std::size_t stop = std::min(data.size(), start + kSumChunk);
        double part_log_abs = 0.0;
        double part_x = 0.0;
        double part_log_w = 0.0;
        for (std::size_t i = start; i < stop; ++i) {
            const double x = shift_zero(data[i]);
            const double ax = std::abs(x);
            const int side = x > 0.0 ? 0 : 1;
            part_log_abs += std::log(ax);
            part_x += x;
            if (series[side]) {
                part_log_w += (*series[side])(std::log(ax * rate_sum));
                continue;
            }
            try {
                part_log_w += specfun::log_whittaker_w(side == 0 ? lam_pos : -lam_pos, mu, ax * rate_sum, cfg);
            } catch (const NumericalError& e) {
                std::ostringstream os;
                os << "log_likelihood: observation " << i << " (x = " << x << "): " << e.what();
                throw NumericalError(os.str(), e.achieved_tolerance());
            }
        }
        sum_log_abs += part_log_abs;
        sum_x += part_x;
        sum_log_w += part_log_w;
    }
    const auto n = static_cast<double>(data.size());
    const auto np = static_cast<double>(n_pos);
    const double nm = n - np;
    return -np * specfun::log_gamma(ap) - nm * specfun::log_gamma(am) +
           n * (ap * std::log(lp) + am * std::log(lm) - 0.5 * (ap + am) * std::log(rate_sum)) +
           (0.5 * (ap + am) - 1.0) * sum_log_abs - 0.5 * (lp - lm) * sum_x + sum_log_w;
}

HookeJeevesResult maximize_hooke_jeeves(const std::function<double(std::span<const double>)>& objective,
                                        std::vector<double> x0, const HookeJeevesOptions& options) {
    if (x0.empty()) throw DomainError("maximize_hooke_jeeves requires a non-empty start");
    if (!(options.initial_step > 0.0) || !(options.contraction > 0.0 && options.contraction < 1.0) ||
        !(options.min_step > 0.0) || options.max_evaluations < 1) {
        throw DomainError("maximize_hooke_jeeves: invalid options");
    }
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    HookeJeevesResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        double v = kNegInf;
        try {
            v = objective(x);
        } catch (const std::exception&) {
            v = kNegInf;
        }
        return std::isnan(v) ? kNegInf : v;
    };
    auto budget_left = [&] { return res.evaluations < options.max_evaluations; };

    // Exploratory moves around `x` (value fx), coordinate by coordinate.
    auto explore = [&](std::vector<double> x, double fx, double step) {
        for (std::size_t i = 0; i < x.size() && budget_left(); ++i) {
            const double orig = x[i];
            x[i] = orig + step;
            const double up = eval(x);
            if (up > fx) {
                fx = up;
                continue;
            }
            if (!budget_left()) {
                x[i] = orig;
                break;
            }
            x[i] = orig - step;
            const double down = eval(x);
            if (down > fx) {
                fx = down;
                continue;
            }
            x[i] = orig;
        }
        return std::pair{x, fx};
    };

    std::vector<double> base = std::move(x0);
    double f_base = eval(base);
    double step = options.initial_step;
    while (budget_left()) {
        auto [x, fx] = explore(base, f_base, step);
        if (fx > f_base) {
            // Pattern moves: keep extrapolating along the last successful direction.
            while (budget_left()) {
                std::vector<double> pattern(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) pattern[i] = 2.0 * x[i] - base[i];
                base = x;
                f_base = fx;
                const double f_pattern = eval(pattern);
                auto [y, fy] = explore(pattern, f_pattern, step);
                if (fy > f_base) {
                    x = std::move(y);
                    fx = fy;
                } else {
                    break;
                }
            }
        } else {
            step *= options.contraction;
            if (step < options.min_step) {
                res.converged = true;
                break;
            }
        }
    }
    res.x = std::move(base);
    res.value = f_base;
    return res;
}

MleResult mle_fit(std::span<const double> data, const BilateralGammaParams& seed, const HookeJeevesOptions& options,
                  const QuadratureConfig& cfg) {
    require_finite(data);
    auto to_params = [](std::span<const double> x) {
        return BilateralGammaParams(std::exp(x[0]), std::exp(x[1]), std::exp(x[2]), std::exp(x[3]));
    };
    auto objective = [&](std::span<const double> x) { return log_likelihood(to_params(x), data, cfg); };
    std::vector<double> x0{std::log(seed.alpha_plus), std::log(seed.lambda_plus), std::log(seed.alpha_minus),
                           std::log(seed.lambda_minus)};
    const HookeJeevesResult hj = maximize_hooke_jeeves(objective, x0, options);
    if (!std::isfinite(hj.value)) {
        throw NumericalError("mle_fit: log-likelihood is not finite at the seed");
    }
    return {to_params(hj.x), hj.value, hj.evaluations, hj.converged};
}

double kolmogorov_critical(double level, std::size_t n) {
    if (n == 0) throw DomainError("kolmogorov_critical requires n > 0");
    for (std::size_t i = 0; i < kKolmogorovLevels.size(); ++i) {
        if (std::abs(level - kKolmogorovLevels[i]) < 1e-12) {
            return kKolmogorovRatios750[i] * std::sqrt(750.0 / static_cast<double>(n));
        }
    }
    throw DomainError("kolmogorov_critical: untabulated significance level");
}

double kolmogorov_distance(std::span<const double> sorted_data, std::span<const double> fitted,
                           std::span<const double> fitted_left) {
    const std::size_t n = sorted_data.size();
    if (fitted.size() != n || fitted_left.size() != n) {
        throw DomainError("kolmogorov_distance: size mismatch");
    }
    if (n == 0) throw DomainError("kolmogorov_distance requires data");
    const auto nd = static_cast<double>(n);
    double d = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && sorted_data[j + 1] == sorted_data[i]) ++j;
        const double emp_left = static_cast<double>(i) / nd;
        const double emp_right = static_cast<double>(j + 1) / nd;
        d = std::max({d, std::abs(fitted_left[i] - emp_left), std::abs(fitted[i] - emp_right)});
        i = j + 1;
    }
    return std::min(d, 1.0);
}

double kolmogorov_distance(std::span<const double> sorted_data, std::span<const double> fitted) {
    return kolmogorov_distance(sorted_data, fitted, fitted);
}

GoodnessOfFit goodness_of_fit(std::span<const double> data, const CdfOnGrid& fitted_cdf, double sigma,
                              const CdfOnGrid& fitted_cdf_left) {
    if (data.empty()) throw DomainError("goodness_of_fit requires data");
    require_finite(data);
    if (!(sigma >= 0.0)) throw DomainError("goodness_of_fit requires sigma >= 0");
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    constexpr std::size_t kGrid = 4096;
    const double lo = sorted.front() - 3.0 * sigma;
    const double hi = sorted.back() + 3.0 * sigma;
    std::vector<double> grid(kGrid);
    for (std::size_t k = 0; k < kGrid; ++k) {
        grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(kGrid - 1);
    }

    // One sorted evaluation over sample and grid together.
    std::vector<double> merged;
    std::vector<char> from_data;
    merged.reserve(n + kGrid);
    from_data.reserve(n + kGrid);
    {
        std::size_t i = 0;
        std::size_t k = 0;
        while (i < n || k < kGrid) {
            if (k == kGrid || (i < n && sorted[i] <= grid[k])) {
                merged.push_back(sorted[i++]);
                from_data.push_back(1);
            } else {
                merged.push_back(grid[k++]);
                from_data.push_back(0);
            }
        }
    }
    const std::vector<double> values = fitted_cdf(merged);
    if (values.size() != merged.size()) throw DomainError("goodness_of_fit: fitted cdf returned wrong size");
    std::vector<double> at_data;
    std::vector<double> at_grid;
    at_data.reserve(n);
    at_grid.reserve(kGrid);
    for (std::size_t i = 0; i < merged.size(); ++i) (from_data[i] ? at_data : at_grid).push_back(values[i]);

    GoodnessOfFit out;
    if (fitted_cdf_left) {
        const std::vector<double> left = fitted_cdf_left(sorted);
        out.kolmogorov = kolmogorov_distance(sorted, at_data, left);
    } else {
        out.kolmogorov = kolmogorov_distance(sorted, at_data);
    }

    const auto nd = static_cast<double>(n);
    double l1 = 0.0;
    double l2 = 0.0;
    double prev1 = 0.0;
    double prev2 = 0.0;
    for (std::size_t k = 0; k < kGrid; ++k) {
        const auto below = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), grid[k]) - sorted.begin());
        const double diff = std::abs(below / nd - at_grid[k]);
        if (k > 0) {
            const double h = grid[k] - grid[k - 1];
            l1 += 0.5 * h * (prev1 + diff);
            l2 += 0.5 * h * (prev2 + diff * diff);
        }
        prev1 = diff;
        prev2 = diff * diff;
    }
    out.l1 = l1;
    out.l2 = std::sqrt(l2);
    for (double level : kKolmogorovLevels) out.accept[level] = out.kolmogorov < kolmogorov_critical(level, n);
    return out;
}

GoodnessOfFit goodness_of_fit(std::span<const double> data, const BilateralGammaParams& p,
                              const QuadratureConfig& cfg) {
    double sigma = 0.0;
    if (data.size() > 1) {
        double mean = 0.0;
        for (double x : data) mean += x;
        mean /= static_cast<double>(data.size());
        double ss = 0.0;
        for (double x : data) ss += (x - mean) * (x - mean);
        sigma = std::sqrt(ss / static_cast<double>(data.size()));
    }
    auto fitted = [&](std::span<const double> xs) { return cdf_sorted(p, xs, cfg); };
    return goodness_of_fit(data, fitted, sigma);
}

FitReport fit(std::span<const double> data, const HookeJeevesOptions& options, const QuadratureConfig& cfg) {
    const SampleMoments m = sample_moments(data);
    const MomCoefficients c = cumulants_from_moments(m);
    FitReport report;
    try {
        report.mom_seed = method_of_moments(c);
    } catch (const EstimationError&) {
        report.mom_seed = heuristic_seed(c);
        report.seed_source = "heuristic";
    }
    const MleResult mle = mle_fit(data, report.mom_seed, options, cfg);
    report.mle = mle.params;
    report.log_likelihood = mle.log_likelihood;
    report.converged = mle.converged;
    report.n = data.size();
    for (double x : data) (shift_zero(x) > 0.0 ? report.n_pos : report.n_neg) += 1;
    const GoodnessOfFit gof = goodness_of_fit(data, report.mle, cfg);
    report.kolmogorov = gof.kolmogorov;
    report.l1 = gof.l1;
    report.l2 = gof.l2;
    report.test_verdicts = gof.accept;
    return report;
}

namespace {

using nlohmann::json;

std::string level_key(double level) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", level);
    return buf;
}

json params_json(const BilateralGammaParams& p) {
    return json{{"alpha_plus", p.alpha_plus},
                {"lambda_plus", p.lambda_plus},
                {"alpha_minus", p.alpha_minus},
                {"lambda_minus", p.lambda_minus}};
}

BilateralGammaParams params_from(const json& j) {
    return {j.at("alpha_plus").get<double>(), j.at("lambda_plus").get<double>(), j.at("alpha_minus").get<double>(),
            j.at("lambda_minus").get<double>()};
}

}  // namespace

std::string to_json(const FitReport& r) {
    json verdicts = json::object();
    for (const auto& [level, ok] : r.test_verdicts) verdicts[level_key(level)] = ok ? "accept" : "reject";
    json j{{"schema_version", FitReport::kSchemaVersion},
           {"n", r.n},
           {"mom_seed", params_json(r.mom_seed)},
           {"seed_source", r.seed_source},
           {"mle", params_json(r.mle)},
           {"log_likelihood", r.log_likelihood},
           {"converged", r.converged},
           {"n_pos", r.n_pos},
           {"n_neg", r.n_neg},
           {"kolmogorov", r.kolmogorov},
           {"l1", r.l1},
           {"l2", r.l2},
           {"test_verdicts", verdicts}};
    return j.dump(2);
}

FitReport fit_report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("fit report: malformed JSON: ") + e.what());
    }
    try {
        if (j.value("schema_version", 0) != FitReport::kSchemaVersion) {
            throw DomainError("fit report: unsupported schema_version");
        }
        FitReport r;
        r.n = j.at("n").get<std::size_t>();
        r.mom_seed = params_from(j.at("mom_seed"));
        r.seed_source = j.value("seed_source", std::string("method_of_moments"));
        r.mle = params_from(j.at("mle"));
        r.log_likelihood = j.at("log_likelihood").get<double>();
        r.converged = j.value("converged", false);
        r.n_pos = j.at("n_pos").get<std::size_t>();
        r.n_neg = j.at("n_neg").get<std::size_t>();
        r.kolmogorov = j.at("kolmogorov").get<double>();
        r.l1 = j.at("l1").get<double>();
        r.l2 = j.at("l2").get<double>();
        for (const auto& [key, val] : j.at("test_verdicts").items()) {
            r.test_verdicts[std::stod(key)] = val.get<std::string>() == "accept";
        }
        return r;
    } catch (const json::exception& e) {
        throw DomainError(std::string("fit report: ") + e.what());
    }
}

}  // namespace bilgamma
