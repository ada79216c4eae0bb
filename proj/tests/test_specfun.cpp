#include "bilgamma/errors.hpp"
#include "bilgamma/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace bilgamma;
using namespace bilgamma::specfun;

namespace {

struct LogReference {
    double a, b, c, z;
    double expected;
};

}  // namespace

TEST(LogGamma, MatchesStdlib) {
    for (double x : {0.1, 0.5, 1.0, 2.5, 10.0, 171.3, 1e5}) EXPECT_NEAR(log_gamma(x), std::lgamma(x), 1e-12);
    EXPECT_THROW(log_gamma(0.0), DomainError);
    EXPECT_THROW(log_gamma(-1.5), DomainError);
}

// ln W_{k,m}(z) from 40-digit arbitrary-precision evaluation.
TEST(Whittaker, MatchesHighPrecisionValues) {
    const LogReference refs[] = {
        {0.1, 0.3, 0.5, 0, -0.38808345925736439712},  {-0.5, 0.2, 2.0, 0, -1.6581806960567221587},
        {0.25, 1.1, 10.0, 0, -4.3173476380598244669}, {-1.3, 0.45, 0.05, 0, -0.44164672543364423646},
        {0.7, 1.2, 30.0, 0, -12.572968316436946765},  {-12.5, 13.0, 0.3, 0, 14.899660054074200376},
        {2.0, 2.4, 100.0, 0, -40.754210517123944031},
    };
    for (const auto& r : refs) {
        EXPECT_NEAR(log_whittaker_w(r.a, r.b, r.c), r.expected, 1e-9 * std::max(1.0, std::abs(r.expected)))
            << r.a << ' ' << r.b << ' ' << r.c;
    }
}

TEST(Whittaker, ExponentialSpecialCase) {
    // W_{k, 1/2 - k}(z) = z^k e^{-z/2}
    for (double k : {0.3, 0.1, -1.0}) {
        for (double z : {0.1, 1.0, 7.0}) {
            const double expected = std::pow(z, k) * std::exp(-z / 2);
            EXPECT_NEAR(whittaker_w(k, 0.5 - k, z), expected, 1e-10 * expected);
        }
    }
}

TEST(Whittaker, RejectsOutsideRepresentation) {
    EXPECT_THROW(whittaker_w(1.0, 0.2, 1.0), DomainError);
    EXPECT_THROW(whittaker_w(0.1, 0.3, 0.0), DomainError);
}

TEST(Hyp2f1, MatchesHighPrecisionValues) {
    const LogReference refs[] = {
        {1.5, 0.5, 2.5, -0.3, -0.081053605010127481522},  {10.0, 3.0, 4.0, -5.0, -9.2592244112142417528},
        {0.3, 0.7, 1.7, -100.0, -0.92775751399589589129}, {155.0, 94.0, 95.0, -0.6, -71.913611655050112527},
        {2.49, 0.94, 1.94, -0.6, -0.55433307451421738529},
    };
    for (const auto& r : refs) {
        EXPECT_NEAR(log_hyp2f1(r.a, r.b, r.c, r.z), r.expected, 1e-12 * std::max(1.0, std::abs(r.expected)));
    }
}

TEST(Hyp2f1, MatchesBoostPfqOnRandomModerateArguments) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const double a = 0.1 + 3 * u(gen);
        const double b = 0.1 + 3 * u(gen);
        const double c = b + 0.2 + 2 * u(gen);
        const double z = -0.9 * u(gen);
        const double oracle = boost::math::hypergeometric_pFq({a, b}, {c}, z);
        EXPECT_NEAR(hyp2f1(a, b, c, z), oracle, 1e-12 * std::abs(oracle));
    }
}

TEST(Hyp2f1, ElementaryIdentity) {
    // 2F1(1, 1; 2; z) = -ln(1 - z) / z
    for (double z : {-0.1, -1.0, -20.0}) EXPECT_NEAR(hyp2f1(1, 1, 2, z), -std::log1p(-z) / z, 1e-14);
    EXPECT_DOUBLE_EQ(hyp2f1(2.0, 3.0, 4.0, 0.0), 1.0);
    EXPECT_THROW(hyp2f1(1, 1, 2, 0.5), DomainError);
    EXPECT_THROW(hyp2f1(1, 1, -2, -0.5), DomainError);
}

TEST(ExpIntegral, MatchesBoostAndHighPrecision) {
    const std::pair<double, double> refs[] = {{1e-8, 17.843465089050832566},
                                              {0.3, 0.90567665167584673985},
                                              {1.0, 0.21938393439552027368},
                                              {5.0, 0.0011482955912753257973},
                                              {40.0, 1.0367732614516569722e-19}};
    for (const auto& [x, e] : refs) EXPECT_NEAR(exp_integral_e1(x), e, 1e-14 * e);
    for (double x = 0.05; x < 60.0; x *= 1.7) {
        EXPECT_NEAR(exp_integral_e1(x), boost::math::expint(1, x), 1e-13 * boost::math::expint(1, x));
    }
    EXPECT_THROW(exp_integral_e1(0.0), DomainError);
}

TEST(Dilog, MatchesHighPrecisionValues) {
    const std::pair<double, double> refs[] = {{0.01, 1.5886254480763752857}, {0.5, 0.5822405264650125059},
                                              {1.0, 0.0},                    {1.7, -0.60515840233770525031},
                                              {3.0, -1.4367463668836809464}, {50.0, -9.1977617095309978531},
                                              {1e6, -97.079085239941674902}};
    for (const auto& [x, e] : refs) EXPECT_NEAR(dilog(x), e, 1e-14 * std::max(1.0, std::abs(e))) << x;
    EXPECT_NEAR(dilog(0.0), std::numbers::pi * std::numbers::pi / 6, 1e-15);
    EXPECT_THROW(dilog(-0.1), DomainError);
}

TEST(Dilog, EqualsDefiningIntegral) {
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double x : {0.2, 0.9, 1.3, 4.0, 25.0}) {
        const double oracle = -ts.integrate([](double t) { return std::abs(t - 1) < 1e-300 ? -1.0 : std::log(t) / (t - 1); },
                                            1.0, x, 1e-15);
        EXPECT_NEAR(dilog(x), oracle, 1e-13 * std::max(1.0, std::abs(oracle))) << x;
    }
}

TEST(LogExpIntegral, EqualsQuadrature) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        const double a = -2 + 2 * u(gen);
        const double b = a + 3 * u(gen);
        const double c = 0.1 + 2 * u(gen);
        const double lam = (u(gen) < 0.5 ? -1 : 1) * (0.1 + 2 * u(gen));
        // Keep c + d e^{lam x} > 0: d >= -c e^{-lam x} on [a, b].
        const double min_scale = std::min(std::exp(-lam * a), std::exp(-lam * b));
        const double d = -0.95 * c * min_scale + 3 * u(gen);
        const double oracle = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double x) { return std::log(c + d * std::exp(lam * x)); }, a, b, 15, 1e-15);
        EXPECT_NEAR(log_exp_integral(a, b, c, d, lam), oracle, 1e-10 * std::max(1.0, std::abs(oracle)));
    }
    EXPECT_THROW(log_exp_integral(0, 1, -1, 1, 1), DomainError);
    EXPECT_THROW(log_exp_integral(0, 1, 1, -2, 1), DomainError);
}
