#include "bilgamma/errors.hpp"
#include "bilgamma/measure.hpp"
#include "bilgamma/process.hpp"
#include "bilgamma/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace bilgamma;

namespace {

struct MonteCarlo {
    double mean;
    double standard_error;
};

template <class F>
MonteCarlo mc_over_draws(const SubordinatorDraws& d, F f) {
    const std::size_t n = d.x_plus.size();
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = f(d.x_plus[i], d.x_minus[i]);
        s += v;
        s2 += v * v;
    }
    const double mean = s / static_cast<double>(n);
    const double var = (s2 / static_cast<double>(n) - mean * mean) * static_cast<double>(n) / (n - 1.0);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

TEST(Equivalence, RequiresMatchingShapes) {
    const BilateralGammaParams p(1.5, 2.0, 0.5, 3.0);
    EXPECT_TRUE(check_equivalence(p, BilateralGammaParams(1.5, 7.0, 0.5, 1.0)));
    EXPECT_FALSE(check_equivalence(p, BilateralGammaParams(1.6, 2.0, 0.5, 3.0)));
    EXPECT_THROW(MeasurePair(p, BilateralGammaParams(1.5, 2.0, 0.6, 3.0)), DomainError);
}

TEST(Entropy, KernelProperties) {
    EXPECT_EQ(entropy_kernel(1.0), 0.0);
    for (double x : {1e-8, 0.2, 0.999999, 1.000001, 5.0, 1e6}) EXPECT_GT(entropy_kernel(x), 0.0);
    EXPECT_NEAR(entropy_kernel(1.0 + 1e-8), 0.5e-16, 1e-22);
    EXPECT_THROW(entropy_kernel(0.0), DomainError);
}

TEST(Entropy, FrullaniIntegralByQuadrature) {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 20; ++i) {
        const double l1 = std::exp(u(gen));
        const double l2 = std::exp(u(gen));
        auto f = [&](double x) { return x == 0.0 ? l1 - l2 : (std::exp(-l2 * x) - std::exp(-l1 * x)) / x; };
        const auto r = integrate_to_infinity(f, 0.0, 1.0 / std::min(l1, l2), QuadratureConfig{1e-14, 1e-12, 400});
        EXPECT_NEAR(r.value, std::log(l1 / l2), 1e-8);
    }
}

TEST(Entropy, ClosedFormEqualsLevyMeasureIntegral) {
    const BilateralGammaParams p(1.3, 4.0, 0.7, 2.5);
    const BilateralGammaParams q(1.3, 6.0, 0.7, 1.5);
    // t * int (Phi ln Phi - Phi + 1) dF_P with Phi the density ratio of the Levy measures.
    boost::math::quadrature::exp_sinh<double> es;
    auto side = [&](double sign) {
        return es.integrate([&](double y) {
            if (y == 0.0) return 0.0;
            const double x = sign * y;
            const double f = levy_density(p, x);
            const double log_phi = x > 0 ? -(q.lambda_plus - p.lambda_plus) * x : (q.lambda_minus - p.lambda_minus) * x;
            if (f == 0.0) return 0.0;
            return f * (std::exp(log_phi) * log_phi - std::expm1(log_phi));
        }, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
    };
    const double oracle = 2.5 * (side(1.0) + side(-1.0));
    EXPECT_NEAR(relative_entropy(MeasurePair(p, q), 2.5), oracle, 1e-9 * oracle);
    EXPECT_EQ(relative_entropy(MeasurePair(p, p), 1.0), 0.0);
    EXPECT_NEAR(levy_density_ratio(p, q, 0.3), std::exp(-2.0 * 0.3), 1e-15);
}

TEST(Entropy, ExpectationsUnderBothMeasures) {
    const BilateralGammaParams p(1.55, 133.96, 0.94, 88.92);
    const BilateralGammaParams q(1.55, 139.3, 0.94, 83.68);
    const MeasurePair mp(p, q);
    const double t = 20.0;
    const auto under_p = sample_subordinators(p, t, 100000, 17);
    const auto density = mc_over_draws(under_p, [&](double xp, double xm) {
        return std::exp(log_likelihood_process(mp, xp, xm, t));
    });
    EXPECT_NEAR(density.mean, 1.0, 3 * density.standard_error);
    const auto under_q = sample_subordinators(q, t, 100000, 18);
    const auto entropy = mc_over_draws(under_q, [&](double xp, double xm) {
        return log_likelihood_process(mp, xp, xm, t);
    });
    EXPECT_NEAR(entropy.mean, relative_entropy(mp, t), 3 * entropy.standard_error);
}

TEST(Entropy, LikelihoodProcessFormula) {
    const MeasurePair mp(BilateralGammaParams(2, 3, 1, 4), BilateralGammaParams(2, 5, 1, 2));
    const double u = log_likelihood_process(mp, 0.4, 0.1, 2.0);
    EXPECT_NEAR(u, (3 - 5) * 0.4 + (4 - 2) * 0.1 + 2.0 * (2 * std::log(5.0 / 3) + std::log(2.0 / 4)), 1e-14);
}

TEST(Hellinger, FiniteForEquivalentLawsWithFrullaniLimit) {
    const BilateralGammaParams p(1.3, 4.0, 0.7, 2.5);
    const BilateralGammaParams q(1.3, 6.0, 0.7, 1.5);
    auto limit = [](double a, double l1, double l2) {
        return a * (2 * std::log((l1 + l2) / 2) - std::log(l1) - std::log(l2));
    };
    const double expected = limit(1.3, 4.0, 6.0) + limit(0.7, 2.5, 1.5);
    EXPECT_NEAR(hellinger_levy_integral(p, q, 1e-10), expected, 1e-8);
    EXPECT_NEAR(hellinger_levy_integral(p, q, 1e-10, 1.0) + hellinger_levy_integral(p, q, 1.0), expected, 1e-8);
}

TEST(Hellinger, DivergesForDifferentShapes) {
    const BilateralGammaParams p(1.3, 4.0, 0.7, 2.5);
    const BilateralGammaParams q(2.0, 4.0, 0.7, 2.5);
    const double h1 = hellinger_levy_integral(p, q, 1e-7);
    const double h2 = hellinger_levy_integral(p, q, 1e-11);
    // Growth (1 - sqrt(alpha2/alpha1))^2 alpha1 ln(1/eps) up to O(lambda eps).
    const double rate = std::pow(1.0 - std::sqrt(2.0 / 1.3), 2) * 1.3;
    EXPECT_NEAR(h2 - h1, rate * std::log(1e4), 1e-6);
}
