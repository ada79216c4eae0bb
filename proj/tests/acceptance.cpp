// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Criteria listed after --known-unattainable
// still run and still report FAIL, but do not affect the exit status.

#include "bilgamma/bgdist.hpp"
#include "bilgamma/errors.hpp"
#include "bilgamma/estimate.hpp"
#include "bilgamma/measure.hpp"
#include "bilgamma/pricing.hpp"
#include "bilgamma/process.hpp"
#include "bilgamma/quadrature.hpp"
#include "bilgamma/termstructure.hpp"
#include "support.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace bilgamma;

namespace {

const BilateralGammaParams kRealWorld(1.55, 133.96, 0.94, 88.92);
const double kInf = std::numeric_limits<double>::infinity();

/// Collects failed sub-checks of one criterion.
class Checks {
public:
    void require(bool ok, const std::string& what) {
        if (!ok && failures_.size() < 4) failures_.push_back(what);
        all_ &= ok;
    }
    void near(double value, double target, double tol, const std::string& what) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s: %.10g vs %.10g (tol %.2g)", what.c_str(), value, target, tol);
        require(std::abs(value - target) <= tol, buf);
    }
    void note(const std::string& text) { notes_.push_back(text); }
    bool passed() const { return all_; }
    std::string summary() const {
        std::string s;
        for (const auto& n : notes_) s += (s.empty() ? "" : "; ") + n;
        for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + ("failed " + f);
        return s;
    }

private:
    bool all_ = true;
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

void method_of_moments_example(Checks& c) {
    const auto start = std::chrono::steady_clock::now();
    SampleMoments m;
    m.m = {0.001032666257, 0.0002100280033, -0.0000008191504362, 0.0000002735163873};
    m.n = 750;
    const auto p = method_of_moments(cumulants_from_moments(m));
    const double elapsed = seconds_since(start);
    c.near(p.alpha_plus, 1.28, 0.02, "alpha+");
    c.near(p.lambda_plus, 119.75, 1.0, "lambda+");
    c.near(p.alpha_minus, 0.78, 0.02, "alpha-");
    c.near(p.lambda_minus, 80.82, 1.0, "lambda-");
    c.require(elapsed < 1.0, "runtime < 1 s");
    c.note("estimate " + p.to_string() + fmt(", %.3f s", elapsed));
}

void minimal_entropy_example(Checks& c) {
    const auto start = std::chrono::steady_clock::now();
    const double lambda = minimal_entropy_lambda(StockModel{5000.0, 0.0, kRealWorld});
    const double phi = phi_lambda(lambda, kRealWorld.alpha_plus, kRealWorld.alpha_minus);
    const double elapsed = seconds_since(start);
    c.near(lambda, 139.47, 1.0, "lambda");
    c.near(phi, 83.51, 0.5, "phi(lambda)");
    c.require(elapsed < 1.0, "runtime < 1 s");
    c.note(fmt("lambda %.4f, phi %.4f, %.3f s", lambda, phi, elapsed));
}

void option_price_example(Checks& c) {
    const BilateralGammaParams rounded(1.55, 139.47, 0.94, 83.51);
    const auto start = std::chrono::steady_clock::now();
    const double closed = call_price_closed(5000.0, 5000.0, 100.0, rounded);
    const double elapsed = seconds_since(start);
    const auto mc = call_price_mc(5000.0, 5000.0, 100.0, rounded, 2007, 1000000);
    c.near(closed, 290.75, 2.0, "closed form price");
    c.near(mc.estimate, closed, 3 * mc.standard_error, "Monte Carlo vs closed form");
    c.require(elapsed < 0.1, "closed-form runtime < 0.1 s");
    c.note(fmt("closed %.4f, MC %.4f +- %.4f", closed, mc.estimate, mc.standard_error));
    c.note(fmt("martingale residual of rounded tuple %.3g", martingale_check(rounded).residual));
}

/// Same price with the curve parameter taken from the minimal-entropy equation,
/// so that the law is an exact martingale.
std::string option_price_on_martingale_curve() {
    const double lambda = minimal_entropy_lambda(StockModel{5000.0, 0.0, kRealWorld});
    const auto q = martingale_params(kRealWorld, lambda);
    return fmt("lambda %.4f, phi %.4f, price %.4f", lambda, q.lambda_minus,
               call_price_closed(5000.0, 5000.0, 100.0, q));
}

void kolmogorov_table(Checks& c) {
    const std::array<double, 5> tabulated{0.039, 0.045, 0.050, 0.055, 0.059};
    for (std::size_t i = 0; i < tabulated.size(); ++i) {
        c.require(kolmogorov_critical(kKolmogorovLevels[i], 750) == tabulated[i], fmt("ratio at level %.2f", kKolmogorovLevels[i]));
    }
    // Sample 1..750 against F(x) = x/750 + 0.052: distance 0.052 + 1/750 at the left limits.
    std::vector<double> data(750);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<double>(i + 1);
    const auto shifted = [](std::span<const double> grid) {
        std::vector<double> out(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) out[i] = std::clamp(grid[i] / 750.0 + 0.052, 0.0, 1.0);
        return out;
    };
    const auto gof = goodness_of_fit(data, shifted, 200.0);
    c.near(gof.kolmogorov, 0.052 + 1.0 / 750, 1e-12, "distance");
    for (std::size_t i = 0; i < tabulated.size(); ++i) {
        c.require(gof.accept.at(kKolmogorovLevels[i]) == (gof.kolmogorov < tabulated[i]),
                  fmt("verdict at level %.2f", kKolmogorovLevels[i]));
    }
    c.note(fmt("distance %.5f accepted at levels <= 0.02", gof.kolmogorov));
}

std::vector<BilateralGammaParams> density_params() {
    return {BilateralGammaParams(1, 1, 1, 1),        BilateralGammaParams(0.4, 2.0, 0.7, 3.0),
            BilateralGammaParams(2.5, 1.5, 1.2, 0.8), kRealWorld,
            BilateralGammaParams(0.2, 10.0, 0.3, 5.0), BilateralGammaParams(155.0, 11000.0, 94.0, 8000.0)};
}

void density_suite(Checks& c) {
    const auto start = std::chrono::steady_clock::now();
    for (const auto& p : density_params()) {
        const double mass = integrate_pdf(p, -kInf, kInf, [](double) { return 1.0; }).value;
        c.near(mass, 1.0, 1e-6, "mass of " + p.to_string());
    }
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto params = density_params();
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto& p = params[static_cast<std::size_t>(i) % params.size()];
        const double sd = std::sqrt(summary_stats(p).variance);
        double x = 4.0 * sd * u(gen);
        if (std::abs(x) < 1e-3 * sd) x = 1e-3 * sd;
        const double oracle = test::convolution_density(p, x);
        const double err = std::abs(pdf(p, x) - oracle) / std::max(1.0, oracle);
        worst = std::max(worst, err);
        c.require(err <= 1e-8, "Whittaker vs convolution at " + p.to_string() + fmt(" x=%.6g", x));
    }
    c.near(pdf(BilateralGammaParams(1, 1, 1, 1), 1.0), std::exp(-1.0) / 2, 1e-10, "Laplace density at 1");
    const double elapsed = seconds_since(start);
    c.require(elapsed < 30.0, "suite runtime < 30 s");
    c.note(fmt("worst Whittaker/convolution gap %.2g, %.2f s", worst, elapsed));
}

void cumulant_suite(Checks& c) {
    for (const auto& p : density_params()) {
        const auto k = cumulants(p, 4);
        const double h = 2e-3 * std::min(p.lambda_plus, p.lambda_minus);
        auto psi = [&](double z) { return cumulant_generating(p, z); };
        const std::array<double, 4> fd{
            (psi(h) - psi(-h)) / (2 * h),
            (psi(h) - 2 * psi(0) + psi(-h)) / (h * h),
            (psi(2 * h) - 2 * psi(h) + 2 * psi(-h) - psi(-2 * h)) / (2 * h * h * h),
            (psi(2 * h) - 4 * psi(h) + 6 * psi(0) - 4 * psi(-h) + psi(-2 * h)) / (h * h * h * h)};
        for (int n = 1; n <= 4; ++n) {
            c.near(fd[n - 1], k[n], 1e-4 * std::abs(k[n]), fmt("kappa_%.0f of ", n) + p.to_string());
        }
    }
    for (const auto& p : {BilateralGammaParams(1.2, 3.0, 0.8, 2.0), BilateralGammaParams(2.5, 1.5, 1.2, 0.8)}) {
        for (double z : {0.3, 1.0, 2.5}) {
            const double re = integrate_pdf(p, -kInf, kInf, [&](double x) { return std::cos(z * x); }).value;
            const double im = integrate_pdf(p, -kInf, kInf, [&](double x) { return std::sin(z * x); }).value;
            const auto cf = characteristic_function(p, z);
            c.near(std::abs(cf - std::complex<double>(re, im)), 0.0, 1e-4, fmt("Fourier transform at z=%.1f", z));
        }
    }
    const BilateralGammaParams p(1.5, 2.0, 0.7, 1.0);
    const double n = 1e4;
    const auto k = cumulants(p, 2);
    const double scale = std::sqrt(n * k[2]);
    double worst = 0.0;
    for (double z : {0.5, 1.0, 2.0}) {
        const auto phi_n = std::exp(std::complex<double>(0.0, -z * n * k[1] / scale)) *
                           characteristic_function(p.over_time(n), z / scale);
        const double gap = std::abs(phi_n - std::exp(-z * z / 2));
        worst = std::max(worst, gap);
        c.require(gap < 0.01, fmt("normal limit at z=%.1f", z));
    }
    c.note(fmt("normal-limit gap %.2g at n = 1e4", worst));
}

void measure_suite(Checks& c) {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double l1 = std::exp(u(gen));
        const double l2 = std::exp(u(gen));
        auto f = [&](double x) { return x == 0.0 ? l1 - l2 : (std::exp(-l2 * x) - std::exp(-l1 * x)) / x; };
        const auto r = integrate_to_infinity(f, 0.0, 1.0 / std::min(l1, l2), QuadratureConfig{1e-14, 1e-12, 400});
        worst = std::max(worst, std::abs(r.value - std::log(l1 / l2)));
        c.near(r.value, std::log(l1 / l2), 1e-8, fmt("Frullani pair (%.4g, %.4g)", l1, l2));
    }
    const BilateralGammaParams q(1.55, 139.3, 0.94, 83.68);
    const MeasurePair mp(kRealWorld, q);
    const double t = 20.0;
    auto moments = [](const SubordinatorDraws& d, const std::function<double(double, double)>& f) {
        double s = 0.0, s2 = 0.0;
        const double n = static_cast<double>(d.x_plus.size());
        for (std::size_t i = 0; i < d.x_plus.size(); ++i) {
            const double v = f(d.x_plus[i], d.x_minus[i]);
            s += v;
            s2 += v * v;
        }
        const double mean = s / n;
        return std::pair{mean, std::sqrt((s2 / n - mean * mean) / (n - 1))};
    };
    const auto [density, density_se] = moments(sample_subordinators(kRealWorld, t, 100000, 17), [&](double a, double b) {
        return std::exp(log_likelihood_process(mp, a, b, t));
    });
    c.near(density, 1.0, 3 * density_se, "E_P[exp U]");
    const auto [entropy, entropy_se] = moments(sample_subordinators(q, t, 100000, 18), [&](double a, double b) {
        return log_likelihood_process(mp, a, b, t);
    });
    c.near(entropy, relative_entropy(mp, t), 3 * entropy_se, "E_Q[U]");
    c.note(fmt("Frullani worst %.2g; E_P[e^U] %.5f +- %.5f", worst, density, density_se));
    c.note(fmt("E_Q[U] %.6f +- %.6f vs %.6f", entropy, entropy_se, relative_entropy(mp, t)));
}

void martingale_curve(Checks& c) {
    double worst = 0.0;
    for (double u = -3.0; u <= 5.0; u += 0.25) {
        const double lambda = 1.0 + std::pow(10.0, u);
        for (auto [ap, am] : {std::pair{1.55, 0.94}, std::pair{0.3, 2.0}, std::pair{4.0, 4.0}}) {
            const double r = martingale_check(BilateralGammaParams(ap, lambda, am, phi_lambda(lambda, ap, am))).residual;
            worst = std::max(worst, std::abs(r));
        }
    }
    c.require(worst < 1e-12, fmt("martingale residual %.3g", worst));
    const StockModel model{5000.0, 0.0, kRealWorld};
    double worst_rel = 0.0;
    for (double lambda : {3.0, 50.0, 139.47, 2000.0}) {
        const double price = call_price_closed(5000.0, 5000.0, 100.0, martingale_params(kRealWorld, lambda));
        const double back = calibrate_lambda(model, CallQuote{5000.0, 100.0, price});
        worst_rel = std::max(worst_rel, std::abs(back - lambda) / lambda);
        c.near(back, lambda, 1e-6 * lambda, "calibration round trip");
    }
    c.note(fmt("worst residual %.2g, worst calibration error %.2g (relative)", worst, worst_rel));
}

void path_statistic(Checks& c) {
    const auto start = std::chrono::steady_clock::now();
    const BilateralGammaParams p(2.0, 1.0, 1.0, 1.0);
    int inside = 0;
    for (int s = 0; s < 100; ++s) {
        const double v = alpha_path_estimator(p, 100.0, 30, 1000 + static_cast<std::uint64_t>(s)).back().s_plus;
        if (v >= 1.8 && v <= 2.2) ++inside;
    }
    const double elapsed = seconds_since(start);
    c.require(inside >= 95, fmt("%.0f of 100 runs inside [1.8, 2.2]", inside));
    c.require(elapsed < 60.0, "runtime < 60 s");
    c.note(fmt("%.0f of 100 runs inside, %.2f s", inside, elapsed));
}

void term_structure(Checks& c) {
    const std::vector<double> times{0.0, 1.0, 2.0, 5.0, 10.0, 30.0};
    const std::vector<double> rates{0.02, 0.024, 0.027, 0.032, 0.035, 0.033};
    std::mt19937_64 gen(123);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto random_config = [&] {
        const BilateralGammaParams p(0.2 + 3 * u(gen), 0.5 + 20 * u(gen), 0.2 + 3 * u(gen), 0.5 + 20 * u(gen));
        const double a = 0.05 + 2 * u(gen);
        const double ratio = 0.98 * u(gen) + 0.01;
        return TermStructureConfig{ratio * p.lambda_plus * a, a, p, InitialCurve(times, rates), false};
    };
    double worst_phi = 0.0, worst_bond = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto cfg = random_config();
        const double t = 10.0 * u(gen);
        const double T = t + (30.0 - t) * u(gen);
        const double gap = std::abs(phi1_closed(cfg, t, T) - phi1_quadrature(cfg, t, T));
        worst_phi = std::max(worst_phi, gap);
        c.require(gap <= 1e-8, fmt("phi1 routes at t=%.3f T=%.3f", t, T));
        const double r_t = 0.02 + 0.04 * (u(gen) - 0.5);
        c.require(bond_price(cfg, t, t, r_t) == 1.0, "P(t,t) = 1");
        const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double s) { return forward_rate(cfg, t, s, r_t); }, t, T, 15, 1e-14);
        const double bond_gap = std::abs(bond_price(cfg, t, T, r_t) - std::exp(-integral));
        worst_bond = std::max(worst_bond, bond_gap);
        c.require(bond_gap <= 1e-8, fmt("bond vs integrated forward at t=%.3f T=%.3f", t, T));
    }
    c.note(fmt("worst phi1 gap %.2g, worst bond gap %.2g", worst_phi, worst_bond));
}

struct Criterion {
    int id;
    const char* name;
    void (*run)(Checks&);
};

const Criterion kCriteria[] = {
    {1, "method of moments on reference daily moments", method_of_moments_example},
    {2, "minimal-entropy martingale parameters", minimal_entropy_example},
    {3, "at-the-money call price with rounded reference parameters", option_price_example},
    {4, "Kolmogorov critical ratios at n = 750", kolmogorov_table},
    {5, "density coherence", density_suite},
    {6, "cumulants and characteristic function", cumulant_suite},
    {7, "relative entropy and likelihood process", measure_suite},
    {8, "martingale curve and calibration", martingale_curve},
    {9, "path statistic for the shape parameter", path_statistic},
    {10, "term structure closed forms", term_structure},
};

std::set<int> parse_ids(const std::string& text) {
    std::set<int> ids;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) ids.insert(std::stoi(item));
    return ids;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> known;
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--known-unattainable") == 0 && i + 1 < argc) {
            known = parse_ids(argv[++i]);
        } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = parse_ids(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--only ids] [--known-unattainable ids]\n");
            return 2;
        }
    }
    int unexpected = 0;
    for (const auto& criterion : kCriteria) {
        if (!only.empty() && !only.count(criterion.id)) continue;
        Checks checks;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(checks);
        } catch (const std::exception& e) {
            checks.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed = seconds_since(start);
        const bool pass = checks.passed();
        std::printf("criterion %2d %s  %s (%.2f s) [%s]\n", criterion.id, pass ? "PASS" : "FAIL", criterion.name,
                    elapsed, checks.summary().c_str());
        if (criterion.id == 3) {
            std::printf("   info: on the martingale curve from the real-world fit: %s\n",
                        option_price_on_martingale_curve().c_str());
        }
        if (!pass && known.count(criterion.id)) {
            std::printf("   known unattainable: criterion %d does not count toward the exit status\n", criterion.id);
        } else if (!pass) {
            ++unexpected;
        }
    }
    std::fflush(stdout);
    return unexpected == 0 ? 0 : 1;
}
