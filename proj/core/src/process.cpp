#include "bilgamma/process.hpp"

#include "bilgamma/errors.hpp"
#include "bilgamma/random.hpp"
#include "bilgamma/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace bilgamma {

void PathSpec::validate() const {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("PathSpec: horizon must be > 0");
    if (!(step > 0.0) || !(step <= horizon)) throw DomainError("PathSpec: step must satisfy 0 < step <= horizon");
}

SimulatedPath simulate_path(const PathSpec& spec) {
    spec.validate();
    const auto steps = static_cast<std::size_t>(std::ceil(spec.horizon / spec.step - 1e-9));
    SimulatedPath path;
    path.times.reserve(steps + 1);
    path.x_plus.reserve(steps + 1);
    path.x_minus.reserve(steps + 1);
    path.x.reserve(steps + 1);
    Rng plus(derive_seed(spec.seed, streams::kPathPlus));
    Rng minus(derive_seed(spec.seed, streams::kPathMinus));
    double xp = 0.0;
    double xm = 0.0;
    path.times.push_back(0.0);
    path.x_plus.push_back(0.0);
    path.x_minus.push_back(0.0);
    path.x.push_back(0.0);
    for (std::size_t i = 1; i <= steps; ++i) {
        const double t = (i == steps) ? spec.horizon : static_cast<double>(i) * spec.step;
        const double dt = t - path.times.back();
        xp += plus.gamma(spec.params.alpha_plus * dt, spec.params.lambda_plus);
        xm += minus.gamma(spec.params.alpha_minus * dt, spec.params.lambda_minus);
        path.times.push_back(t);
        path.x_plus.push_back(xp);
        path.x_minus.push_back(xm);
        path.x.push_back(xp - xm);
    }
    return path;
}

void write_path_csv(std::ostream& out, const SimulatedPath& path) {
    out << "time,x,x_plus,x_minus\n";
    char buf[128];
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", path.times[i], path.x[i], path.x_plus[i],
                      path.x_minus[i]);
        out << buf;
    }
}

SubordinatorDraws sample_subordinators(const BilateralGammaParams& p, double t, std::size_t count,
                                       std::uint64_t seed) {
    if (!(t > 0.0)) throw DomainError("sample_subordinators requires t > 0");
    Rng plus(derive_seed(seed, streams::kPathPlus));
    Rng minus(derive_seed(seed, streams::kPathMinus));
    SubordinatorDraws d;
    d.x_plus.resize(count);
    d.x_minus.resize(count);
    for (std::size_t i = 0; i < count; ++i) d.x_plus[i] = plus.gamma(p.alpha_plus * t, p.lambda_plus);
    for (std::size_t i = 0; i < count; ++i) d.x_minus[i] = minus.gamma(p.alpha_minus * t, p.lambda_minus);
    return d;
}

namespace {

// Smallest k with P(N <= k) >= u for N ~ Poisson(mean); P(N <= k) = Q(k+1, mean).
std::size_t poisson_inverse(double mean, double u) {
    if (mean <= 0.0) return 0;
    auto cdf = [&](std::size_t k) { return boost::math::gamma_q(static_cast<double>(k) + 1.0, mean); };
    std::size_t lo = 0;
    std::size_t hi = static_cast<std::size_t>(mean + 40.0 * std::sqrt(mean) + 60.0);
    while (cdf(hi) < u) hi *= 2;
    if (cdf(0) >= u) return 0;
    // cdf(lo) < u <= cdf(hi)
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        (cdf(mid) >= u ? hi : lo) = mid;
    }
    return hi;
}

// Inverse of G(x) = 1 - E1(lambda x) / E1(lambda eps) on [eps, inf).
class RestrictedLevySizes {
public:
    static constexpr std::size_t kTable = 4096;

    RestrictedLevySizes(double lambda, double eps) : lambda_(lambda), eps_(eps) {
        norm_ = specfun::exp_integral_e1(lambda * eps);
        x_max_ = std::max(2.0 * eps, eps + 45.0 / lambda);
        xs_.resize(kTable);
        gs_.resize(kTable);
        const double log_lo = std::log(eps);
        const double log_hi = std::log(x_max_);
        for (std::size_t k = 0; k < kTable; ++k) {
            const double x = (k == 0) ? eps
                             : (k + 1 == kTable)
                                 ? x_max_
                                 : std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(k) / (kTable - 1));
            xs_[k] = x;
            gs_[k] = 1.0 - specfun::exp_integral_e1(lambda * x) / norm_;
        }
        gs_[0] = 0.0;
    }

    double operator()(double u) const {
        if (u >= gs_.back()) return tail(u);
        const auto it = std::upper_bound(gs_.begin(), gs_.end(), u);
        const auto k = static_cast<std::size_t>(it - gs_.begin());
        const double g0 = gs_[k - 1];
        const double g1 = gs_[k];
        const double w = g1 > g0 ? (u - g0) / (g1 - g0) : 0.0;
        return std::max(eps_, xs_[k - 1] + w * (xs_[k] - xs_[k - 1]));
    }

private:
    // Newton on E1(lambda x) = (1 - u) E1(lambda eps) beyond the table.
    double tail(double u) const {
        const double target = (1.0 - u) * norm_;
        double x = x_max_;
        for (int it = 0; it < 100; ++it) {
            const double h = specfun::exp_integral_e1(lambda_ * x) - target;
            const double dh = -std::exp(-lambda_ * x) / x;
            if (dh == 0.0) break;
            const double next = std::max(x_max_, x - h / dh);
            if (std::abs(next - x) <= 1e-14 * x) return next;
            x = next;
        }
        return x;
    }

    double lambda_;
    double eps_;
    double norm_;
    double x_max_;
    std::vector<double> xs_;
    std::vector<double> gs_;
};

std::vector<Jump> one_side(double alpha, double lambda, double horizon, double eps, std::uint64_t seed) {
    Rng rng(seed);
    const double mean = horizon * alpha * specfun::exp_integral_e1(lambda * eps);
    const std::size_t count = poisson_inverse(mean, rng.uniform());
    std::vector<Jump> jumps;
    if (count == 0) return jumps;
    const RestrictedLevySizes sizes(lambda, eps);
    jumps.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double time = horizon * rng.uniform();
        jumps.push_back({time, sizes(rng.uniform())});
    }
    std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.time < b.time; });
    return jumps;
}

std::vector<double> sorted_sizes(const std::vector<Jump>& jumps) {
    std::vector<double> s;
    s.reserve(jumps.size());
    for (const Jump& j : jumps) s.push_back(j.size);
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

JumpRecord threshold_jumps(const BilateralGammaParams& p, double horizon, double eps, std::uint64_t seed) {
    if (!(horizon > 0.0)) throw DomainError("threshold_jumps requires horizon > 0");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("threshold_jumps requires eps > 0");
    JumpRecord rec;
    rec.horizon = horizon;
    rec.eps = eps;
    rec.positive = one_side(p.alpha_plus, p.lambda_plus, horizon, eps, derive_seed(seed, streams::kJumpsPlus));
    rec.negative = one_side(p.alpha_minus, p.lambda_minus, horizon, eps, derive_seed(seed, streams::kJumpsMinus));
    return rec;
}

std::vector<PathStatistic> alpha_path_estimator(const JumpRecord& record, int n_max) {
    if (n_max < 1) throw DomainError("alpha_path_estimator requires n_max >= 1");
    if (!(record.horizon > 0.0)) throw DomainError("alpha_path_estimator requires a positive horizon");
    const double smallest = std::exp(-static_cast<double>(n_max));
    if (record.eps > smallest * (1.0 + 1e-12)) {
        throw DomainError("alpha_path_estimator: record threshold exceeds e^-n_max");
    }
    const std::vector<double> plus = sorted_sizes(record.positive);
    const std::vector<double> minus = sorted_sizes(record.negative);
    auto at_least = [](const std::vector<double>& s, double level) {
        return static_cast<double>(s.end() - std::lower_bound(s.begin(), s.end(), level));
    };
    std::vector<PathStatistic> out;
    out.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const double level = std::exp(-static_cast<double>(n));
        const double denom = static_cast<double>(n) * record.horizon;
        out.push_back({n, at_least(plus, level) / denom, at_least(minus, level) / denom});
    }
    return out;
}

std::vector<PathStatistic> alpha_path_estimator(const BilateralGammaParams& p, double horizon, int n_max,
                                                std::uint64_t seed) {
    if (n_max < 1) throw DomainError("alpha_path_estimator requires n_max >= 1");
    return alpha_path_estimator(threshold_jumps(p, horizon, std::exp(-static_cast<double>(n_max)), seed), n_max);
}

}  // namespace bilgamma
