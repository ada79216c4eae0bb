#include "bilgamma/termstructure.hpp"

#include "bilgamma/errors.hpp"
#include "bilgamma/process.hpp"
#include "bilgamma/specfun.hpp"

#include <cmath>
#include <sstream>

namespace bilgamma {

namespace {

void check_times(const TermStructureConfig& cfg, double t, double T) {
    if (!(t >= 0.0) || !(T >= t)) throw DomainError("term structure requires 0 <= t <= T");
    if (T > cfg.initial_curve.max_time()) throw DomainError("term structure requires T <= T_max of the initial curve");
}

double psi_of_sigma(const TermStructureConfig& cfg, double t, double T) {
    return cumulant_generating(cfg.params, capital_sigma(cfg, t, T));
}

QuadratureConfig phi1_quadrature_config(const QuadratureConfig& qcfg) {
    QuadratureConfig c = qcfg;
    c.abs_tol = std::min(c.abs_tol, 1e-12);
    c.rel_tol = std::min(c.rel_tol, 1e-11);
    return c;
}

}  // namespace

void TermStructureConfig::validate() const {
    if (!(sigma_hat >= 0.0) || !std::isfinite(sigma_hat)) throw DomainError("sigma_hat must be finite and >= 0");
    if (!(mean_reversion > 0.0) || !std::isfinite(mean_reversion)) {
        throw DomainError("mean_reversion must be finite and > 0");
    }
    if (!(sigma_hat / mean_reversion < params.lambda_plus)) {
        throw DomainError("term structure requires sigma_hat / a < lambda+");
    }
}

double capital_sigma(const TermStructureConfig& cfg, double t, double T) {
    if (!(T >= t)) throw DomainError("capital_sigma requires t <= T");
    return cfg.sigma_hat / cfg.mean_reversion * -std::expm1(-cfg.mean_reversion * (T - t));
}

double hjm_drift(const TermStructureConfig& cfg, double t, double T) {
    cfg.validate();
    if (!(T >= t)) throw DomainError("hjm_drift requires t <= T");
    return cfg.sigma_hat * std::exp(-cfg.mean_reversion * (T - t)) * psi_prime(cfg.params, capital_sigma(cfg, t, T));
}

double forward_rate(const TermStructureConfig& cfg, double t, double T, double r_t) {
    cfg.validate();
    check_times(cfg, t, T);
    const double decay = std::exp(-cfg.mean_reversion * (T - t));
    const auto& f0 = cfg.initial_curve;
    return f0(T) + psi_of_sigma(cfg, 0.0, T) - psi_of_sigma(cfg, t, T) - decay * psi_of_sigma(cfg, 0.0, t) +
           decay * (r_t - f0(t));
}

double short_rate_offset_quadrature(const TermStructureConfig& cfg, double t, const QuadratureConfig& qcfg) {
    cfg.validate();
    check_times(cfg, 0.0, t);
    if (t == 0.0) return cfg.initial_curve(0.0);
    const QuadratureResult r = integrate([&](double s) { return hjm_drift(cfg, s, t); }, 0.0, t, qcfg);
    if (!r.converged) throw NumericalError("short_rate_offset_quadrature: quadrature did not converge", r.error);
    return cfg.initial_curve(t) + r.value;
}

double short_rate_offset(const TermStructureConfig& cfg, double t) {
    cfg.validate();
    check_times(cfg, 0.0, t);
    return cfg.initial_curve(t) + psi_of_sigma(cfg, 0.0, t);
}

ShortRatePath short_rate_from_increments(const TermStructureConfig& cfg, std::span<const double> times,
                                         std::span<const double> dx) {
    cfg.validate();
    if (times.empty() || times.front() != 0.0) throw DomainError("short rate grid must start at 0");
    if (dx.size() + 1 != times.size()) throw DomainError("short rate grid needs one increment per step");
    ShortRatePath out;
    out.times.assign(times.begin(), times.end());
    out.z.resize(times.size());
    out.r.resize(times.size());
    out.z[0] = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double dt = times[i + 1] - times[i];
        if (!(dt > 0.0)) throw DomainError("short rate grid must increase strictly");
        out.z[i + 1] = std::exp(-cfg.mean_reversion * dt) * out.z[i] + dx[i];
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        out.r[i] = short_rate_offset_quadrature(cfg, times[i]) - cfg.sigma_hat * out.z[i];
    }
    return out;
}

ShortRatePath simulate_short_rate(const TermStructureConfig& cfg, double horizon, double step, std::uint64_t seed) {
    cfg.validate();
    check_times(cfg, 0.0, horizon);
    const SimulatedPath path = simulate_path(PathSpec{cfg.params, horizon, step, seed});
    std::vector<double> dx(path.x.size() - 1);
    for (std::size_t i = 0; i < dx.size(); ++i) dx[i] = path.x[i + 1] - path.x[i];
    return short_rate_from_increments(cfg, path.times, dx);
}

double phi2(const TermStructureConfig& cfg, double t, double T) {
    if (!(cfg.mean_reversion > 0.0)) throw DomainError("phi2 requires a > 0");
    if (!(t >= 0.0) || !(T >= t)) throw DomainError("phi2 requires 0 <= t <= T");
    return -std::expm1(-cfg.mean_reversion * (T - t)) / cfg.mean_reversion;
}

double phi1_quadrature(const TermStructureConfig& cfg, double t, double T, const QuadratureConfig& qcfg) {
    cfg.validate();
    check_times(cfg, t, T);
    if (t == T) return 0.0;
    const QuadratureConfig q = phi1_quadrature_config(qcfg);
    // -int_t^T Psi(Sigma(0,s)) ds + int_t^T Psi(Sigma(t,s)) ds in one integrand.
    const QuadratureResult r = integrate(
        [&](double s) { return psi_of_sigma(cfg, t, s) - psi_of_sigma(cfg, 0.0, s); }, t, T, q);
    if (!r.converged) throw NumericalError("phi1_quadrature: quadrature did not converge", r.error);
    return -cfg.initial_curve.integral(t, T) + r.value +
           phi2(cfg, t, T) * (cfg.initial_curve(t) + psi_of_sigma(cfg, 0.0, t));
}

double phi1_closed(const TermStructureConfig& cfg, double t, double T) {
    cfg.validate();
    check_times(cfg, t, T);
    if (t == T) return 0.0;
    const double a = cfg.mean_reversion;
    const double sh = cfg.sigma_hat;
    const auto& p = cfg.params;
    // 1 - Sigma(0,s)/lambda+ = c (1 + r e^{-a s}) with r = sh / (a lambda+ - sh), and
    // 1 + Sigma(0,s)/lambda- = c (1 + r e^{-a s}) with r = -sh / (a lambda- + sh).
    const double ratio_plus = sh / (a * p.lambda_plus - sh);
    const double ratio_minus = -sh / (a * p.lambda_minus + sh);
    auto d_term = [&](double ratio) {
        auto d = [&](double x) { return specfun::dilog(1.0 + ratio * std::exp(-a * x)); };
        return (d(T) - d(t)) - (d(T - t) - d(0.0));
    };
    const double psi_integrals = (p.alpha_plus * d_term(ratio_plus) + p.alpha_minus * d_term(ratio_minus)) / a;
    return -cfg.initial_curve.integral(t, T) + psi_integrals +
           phi2(cfg, t, T) * (cfg.initial_curve(t) + psi_of_sigma(cfg, 0.0, t));
}

double phi1(const TermStructureConfig& cfg, double t, double T) {
    const double closed = phi1_closed(cfg, t, T);
    if (cfg.cross_check) {
        const double quad = phi1_quadrature(cfg, t, T);
        if (!(std::abs(closed - quad) <= kPhi1CrossCheckTol)) {
            std::ostringstream os;
            os.precision(17);
            os << "phi1: closed form " << closed << " and quadrature " << quad << " disagree";
            throw NumericalError(os.str(), std::abs(closed - quad));
        }
    }
    return closed;
}

double bond_price(const TermStructureConfig& cfg, double t, double T, double r_t) {
    if (!std::isfinite(r_t)) throw DomainError("bond_price requires a finite short rate");
    if (t == T) {
        check_times(cfg, t, T);
        return 1.0;
    }
    return std::exp(phi1(cfg, t, T) - phi2(cfg, t, T) * r_t);
}

}  // namespace bilgamma
