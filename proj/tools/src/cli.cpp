#include "bilgamma_cli/cli.hpp"

#include "bilgamma/bgdist.hpp"
#include "bilgamma/errors.hpp"
#include "bilgamma/estimate.hpp"
#include "bilgamma/measure.hpp"
#include "bilgamma/pricing.hpp"
#include "bilgamma/process.hpp"
#include "bilgamma/termstructure.hpp"
#include "bilgamma_cli/input.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace bilgamma::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

BilateralGammaParams parse_params(const std::string& text, const std::string& what) {
    const auto v = parse_number_list(text, what);
    if (v.size() != 4) throw DomainError(what + ": expected four numbers alpha+,lambda+,alpha-,lambda-");
    return {v[0], v[1], v[2], v[3]};
}

Json params_json(const BilateralGammaParams& p) {
    return Json{{"alpha_plus", p.alpha_plus},
                {"lambda_plus", p.lambda_plus},
                {"alpha_minus", p.alpha_minus},
                {"lambda_minus", p.lambda_minus}};
}

Json with_schema(Json body) {
    Json j{{"schema_version", kSchemaVersion}};
    for (auto& [k, v] : body.items()) j[k] = v;
    return j;
}

void require_positive(double v, const std::string& what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(what + " must be finite and > 0");
}

/// Output of one subcommand: the main document and optional side files.
struct Outputs {
    std::string main;
    std::vector<std::pair<std::string, std::string>> files;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw DomainError("cannot open output file '" + path + "'");
    f << content;
    if (!f) throw DomainError("failed writing output file '" + path + "'");
}

// ---------------------------------------------------------------- fit

struct FitArgs {
    std::string input;
    double dt = 1.0;
};

std::string cmd_fit(const FitArgs& a) {
    require_positive(a.dt, "--dt");
    const std::vector<double> data = read_increments(a.input);
    FitReport report = fit(data);
    Json j = Json::parse(to_json(report));
    if (a.dt != 1.0) {
        j["mom_seed"] = params_json(report.mom_seed.over_time(1.0 / a.dt));
        j["mle"] = params_json(report.mle.over_time(1.0 / a.dt));
    }
    j["dt"] = a.dt;
    return j.dump(2) + "\n";
}

// ----------------------------------------------------------- simulate

struct SimulateArgs {
    std::string params;
    double horizon = 0.0;
    double step = 0.0;
    std::uint64_t seed = 0;
};

std::string cmd_simulate(const SimulateArgs& a) {
    const PathSpec spec{parse_params(a.params, "--params"), a.horizon, a.step, a.seed};
    std::ostringstream os;
    write_path_csv(os, simulate_path(spec));
    return os.str();
}

// -------------------------------------------------------------- price

struct PriceArgs {
    double spot = 0.0;
    double strike = 0.0;
    double tau = 0.0;
    std::string params;
    double rate = 0.0;
    std::string measure = "given";
    std::size_t mc_paths = 0;
    std::optional<std::uint64_t> seed;
};

std::string cmd_price(const PriceArgs& a) {
    require_positive(a.spot, "--spot");
    require_positive(a.strike, "--strike");
    require_positive(a.tau, "--tau");
    const BilateralGammaParams input = parse_params(a.params, "--params");
    Json body;
    BilateralGammaParams q = input;
    if (a.measure == "min-entropy") {
        const double lambda = minimal_entropy_lambda(StockModel{a.spot, a.rate, input});
        q = martingale_params(input, lambda);
        body["real_world"] = params_json(input);
        body["lambda"] = lambda;
    }
    body["measure"] = a.measure;
    body["params"] = params_json(q);
    body["martingale_residual"] = martingale_check(q).residual;
    body["spot"] = a.spot;
    body["strike"] = a.strike;
    body["tau"] = a.tau;
    body["rate"] = a.rate;
    const CallPriceParts parts = call_price_parts(a.spot * std::exp(a.rate * a.tau), a.strike, a.tau, q);
    body["forward_parts"] = Json{{"spot_block", parts.spot_block},
                                 {"strike_block", parts.strike_block},
                                 {"integral", parts.integral}};
    body["closed_form"] = call_price_closed(a.spot, a.strike, a.tau, q, a.rate);
    if (a.mc_paths > 0) {
        if (!a.seed) throw DomainError("--mc-paths requires --seed");
        const MonteCarloEstimate mc = call_price_mc(a.spot, a.strike, a.tau, q, *a.seed, a.mc_paths, a.rate);
        body["monte_carlo"] = Json{{"estimate", mc.estimate},
                                   {"standard_error", mc.standard_error},
                                   {"paths", a.mc_paths},
                                   {"seed", *a.seed}};
    }
    return with_schema(body).dump(2) + "\n";
}

// ---------------------------------------------------------- calibrate

struct CalibrateArgs {
    double spot = 0.0;
    double strike = 0.0;
    double tau = 0.0;
    std::string alphas;
    double target = 0.0;
    double rate = 0.0;
    std::string curve_output;
    int curve_points = 161;
};

Outputs cmd_calibrate(const CalibrateArgs& a) {
    const auto shapes = parse_number_list(a.alphas, "--alphas");
    if (shapes.size() != 2) throw DomainError("--alphas: expected alpha+,alpha-");
    // Only the shapes of the real-world law enter the martingale family.
    const StockModel model{a.spot, a.rate, BilateralGammaParams(shapes[0], 1.0, shapes[1], 1.0)};
    Outputs out;
    if (!a.curve_output.empty()) {
        if (a.curve_points < 2) throw DomainError("--curve-points must be >= 2");
        std::ostringstream csv;
        csv << "lambda,phi_lambda,price\n";
        for (const PricePoint& pt : price_curve(model, a.strike, a.tau, a.curve_points)) {
            csv << number(pt.lambda) << ',' << number(phi_lambda(pt.lambda, shapes[0], shapes[1])) << ','
                << number(pt.price) << '\n';
        }
        out.files.emplace_back(a.curve_output, csv.str());
    }
    const double lambda = calibrate_lambda(model, CallQuote{a.strike, a.tau, a.target});
    const BilateralGammaParams q = martingale_params(model.p_real, lambda);
    Json body{{"spot", a.spot},       {"strike", a.strike},
              {"tau", a.tau},         {"rate", a.rate},
              {"target", a.target},   {"lambda", lambda},
              {"phi_lambda", q.lambda_minus}, {"params", params_json(q)},
              {"model_price", call_price_closed(a.spot, a.strike, a.tau, q, a.rate)}};
    out.main = with_schema(body).dump(2) + "\n";
    return out;
}

// ------------------------------------------------------------ entropy

struct EntropyArgs {
    std::string params_p;
    std::optional<double> lambda;
    double t = 1.0;
};

std::string cmd_entropy(const EntropyArgs& a) {
    require_positive(a.t, "--t");
    const BilateralGammaParams p = parse_params(a.params_p, "--params-p");
    const bool minimal = !a.lambda.has_value();
    const double lambda = minimal ? minimal_entropy_lambda(StockModel{1.0, 0.0, p}) : *a.lambda;
    const BilateralGammaParams q = martingale_params(p, lambda);
    Json body{{"params_p", params_json(p)},
              {"lambda", lambda},
              {"minimal", minimal},
              {"phi_lambda", q.lambda_minus},
              {"params_q", params_json(q)},
              {"t", a.t},
              {"relative_entropy", relative_entropy(MeasurePair(p, q), a.t)},
              {"entropy_derivative", min_entropy_residual(p, lambda)}};
    return with_schema(body).dump(2) + "\n";
}

// --------------------------------------------------------------- bond

struct BondArgs {
    std::string config;
    double t = 0.0;
    double maturity = 0.0;
    double rate_now = 0.0;
    int points = 101;
};

bool parse_bool(const std::string& v, const std::string& what) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw DomainError(what + ": expected true or false, got '" + v + "'");
}

TermStructureConfig term_structure_from(const KeyValues& kv, const std::string& source) {
    static const std::vector<std::string> known{"sigma_hat", "mean_reversion", "params",     "flat_rate",
                                                "curve_times", "curve_rates",  "cross_check"};
    for (const auto& [k, v] : kv) {
        if (std::find(known.begin(), known.end(), k) == known.end()) {
            throw DomainError(source + ": unknown key '" + k + "'");
        }
    }
    auto need = [&](const std::string& k) -> const std::string& {
        const auto it = kv.find(k);
        if (it == kv.end()) throw DomainError(source + ": missing key '" + k + "'");
        return it->second;
    };
    const bool flat = kv.count("flat_rate") > 0;
    const bool tabulated = kv.count("curve_times") > 0 || kv.count("curve_rates") > 0;
    if (flat == tabulated) throw DomainError(source + ": give either flat_rate or curve_times and curve_rates");
    std::optional<InitialCurve> curve;
    if (flat) {
        curve = InitialCurve::flat(parse_number(need("flat_rate"), "flat_rate"));
    } else {
        const auto times = parse_number_list(need("curve_times"), "curve_times");
        const auto rates = parse_number_list(need("curve_rates"), "curve_rates");
        curve = InitialCurve(times, rates);
    }
    TermStructureConfig cfg{parse_number(need("sigma_hat"), "sigma_hat"),
                            parse_number(need("mean_reversion"), "mean_reversion"),
                            parse_params(need("params"), "params"), *curve,
                            kv.count("cross_check") ? parse_bool(kv.at("cross_check"), "cross_check") : false};
    cfg.validate();
    return cfg;
}

std::string cmd_bond(const BondArgs& a) {
    const TermStructureConfig cfg = term_structure_from(read_key_values(a.config), a.config);
    if (!(a.maturity >= a.t)) throw DomainError("--T must be >= --t");
    if (a.points < 1 || (a.points == 1 && a.maturity != a.t)) throw DomainError("--points must be >= 2");
    std::ostringstream csv;
    csv << "T,bond_price,forward_rate\n";
    for (int i = 0; i < a.points; ++i) {
        const double T = (i + 1 == a.points) ? a.maturity
                                             : a.t + (a.maturity - a.t) * i / static_cast<double>(a.points - 1);
        csv << number(T) << ',' << number(bond_price(cfg, a.t, T, a.rate_now)) << ','
            << number(forward_rate(cfg, a.t, T, a.rate_now)) << '\n';
    }
    return csv.str();
}

// ---------------------------------------------------------------- gof

struct GofArgs {
    std::string input;
    std::string params;
    double dt = 1.0;
};

std::string cmd_gof(const GofArgs& a) {
    require_positive(a.dt, "--dt");
    const BilateralGammaParams p = parse_params(a.params, "--params");
    const std::vector<double> data = read_increments(a.input);
    const GoodnessOfFit g = goodness_of_fit(data, p.over_time(a.dt));
    Json critical = Json::object();
    Json verdicts = Json::object();
    char key[16];
    for (const double level : kKolmogorovLevels) {
        std::snprintf(key, sizeof key, "%.2f", level);
        critical[key] = kolmogorov_critical(level, data.size());
        verdicts[key] = g.accept.at(level) ? "accept" : "reject";
    }
    Json body{{"params", params_json(p)}, {"dt", a.dt},         {"n", data.size()},
              {"kolmogorov", g.kolmogorov}, {"l1", g.l1},       {"l2", g.l2},
              {"critical", critical},       {"verdicts", verdicts}};
    return with_schema(body).dump(2) + "\n";
}

// ---------------------------------------------------------- pdf-table

struct PdfTableArgs {
    std::string params;
    double from = 0.0;
    double to = 0.0;
    int points = 0;
};

std::string cmd_pdf_table(const PdfTableArgs& a) {
    const BilateralGammaParams p = parse_params(a.params, "--params");
    if (!std::isfinite(a.from) || !std::isfinite(a.to) || !(a.to > a.from)) {
        throw DomainError("--from and --to must be finite with from < to");
    }
    if (a.points < 2) throw DomainError("--points must be >= 2");
    const auto n = static_cast<std::size_t>(a.points);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(n - 1);
        xs[i] = (1.0 - s) * a.from + s * a.to;
    }
    if (a.from == -a.to) {
        // The lower half mirrors the upper half: the grid is exactly symmetric about 0.
        for (std::size_t i = 0; i < n / 2; ++i) xs[i] = -xs[n - 1 - i];
        if (n % 2 == 1) xs[n / 2] = 0.0;
    }
    const std::vector<double> cdfs = cdf_sorted(p, xs);
    std::ostringstream csv;
    csv << "x,pdf,cdf\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const double density = std::abs(x) < 1e-12 ? density_at_origin(p) : pdf(p, x);
        csv << number(x) << ',' << number(density) << ',' << number(cdfs[i]) << '\n';
    }
    return csv.str();
}

// ------------------------------------------------------------- errors

std::string envelope(const std::string& code, const std::string& message, Json extra = Json::object()) {
    Json e{{"code", code}, {"message", message}};
    for (auto& [k, v] : extra.items()) e[k] = v;
    return Json{{"error", e}}.dump() + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bilateral Gamma distributions, processes, option pricing and term structures", "bilgamma"};
    app.require_subcommand(1);
    std::string output;

    Outputs result;
    std::function<void()> action;

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a bilateral Gamma law to a price or path series");
    fit_cmd->add_option("--input", fit_args.input, "CSV with header date,close or time,x,x_plus,x_minus")->required();
    fit_cmd->add_option("--output", output, "JSON report path");
    fit_cmd->add_option("--dt", fit_args.dt, "Time units per observation")->capture_default_str();
    fit_cmd->callback([&] { action = [&] { result.main = cmd_fit(fit_args); }; });

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Simulate a process path on a time grid");
    sim_cmd->add_option("--params", sim_args.params, "alpha+,lambda+,alpha-,lambda-")->required();
    sim_cmd->add_option("--horizon", sim_args.horizon)->required();
    sim_cmd->add_option("--step", sim_args.step)->required();
    sim_cmd->add_option("--seed", sim_args.seed)->required();
    sim_cmd->add_option("--output", output, "CSV path");
    sim_cmd->callback([&] { action = [&] { result.main = cmd_simulate(sim_args); }; });

    PriceArgs price_args;
    std::uint64_t price_seed = 0;
    auto* price_cmd = app.add_subcommand("price", "Price a European call under a martingale law");
    price_cmd->add_option("--spot", price_args.spot)->required();
    price_cmd->add_option("--strike", price_args.strike)->required();
    price_cmd->add_option("--tau", price_args.tau)->required();
    price_cmd->add_option("--params", price_args.params, "alpha+,lambda+,alpha-,lambda-")->required();
    price_cmd->add_option("--rate", price_args.rate)->capture_default_str();
    price_cmd->add_option("--measure", price_args.measure,
                          "given: params are the pricing law; min-entropy: params are real-world")
        ->check(CLI::IsMember({"given", "min-entropy"}))
        ->capture_default_str();
    price_cmd->add_option("--mc-paths", price_args.mc_paths, "Monte Carlo paths (0 disables)");
    auto* price_seed_opt = price_cmd->add_option("--seed", price_seed);
    price_cmd->add_option("--output", output, "JSON report path");
    price_cmd->callback([&] {
        if (price_seed_opt->count() > 0) price_args.seed = price_seed;
        action = [&] { result.main = cmd_price(price_args); };
    });

    CalibrateArgs cal_args;
    auto* cal_cmd = app.add_subcommand("calibrate", "Calibrate the martingale-curve parameter to a call quote");
    cal_cmd->add_option("--spot", cal_args.spot)->required();
    cal_cmd->add_option("--strike", cal_args.strike)->required();
    cal_cmd->add_option("--tau", cal_args.tau)->required();
    cal_cmd->add_option("--alphas", cal_args.alphas, "alpha+,alpha-")->required();
    cal_cmd->add_option("--target", cal_args.target, "Quoted call price")->required();
    cal_cmd->add_option("--rate", cal_args.rate)->capture_default_str();
    cal_cmd->add_option("--curve-output", cal_args.curve_output, "CSV of lambda,phi_lambda,price");
    cal_cmd->add_option("--curve-points", cal_args.curve_points)->capture_default_str();
    cal_cmd->add_option("--output", output, "JSON report path");
    cal_cmd->callback([&] { action = [&] { result = cmd_calibrate(cal_args); }; });

    EntropyArgs ent_args;
    double ent_lambda = 0.0;
    auto* ent_cmd = app.add_subcommand("entropy", "Relative entropy of a martingale law (minimal when --lambda is omitted)");
    ent_cmd->add_option("--params-p", ent_args.params_p, "Real-world alpha+,lambda+,alpha-,lambda-")->required();
    auto* ent_lambda_opt = ent_cmd->add_option("--lambda", ent_lambda);
    ent_cmd->add_option("--t", ent_args.t)->capture_default_str();
    ent_cmd->add_option("--output", output, "JSON report path");
    ent_cmd->callback([&] {
        if (ent_lambda_opt->count() > 0) ent_args.lambda = ent_lambda;
        action = [&] { result.main = cmd_entropy(ent_args); };
    });

    BondArgs bond_args;
    auto* bond_cmd = app.add_subcommand("bond", "Bond prices and forward rates from a term-structure config");
    bond_cmd->add_option("--config", bond_args.config, "key = value file")->required();
    bond_cmd->add_option("--t", bond_args.t)->required();
    bond_cmd->add_option("--T", bond_args.maturity)->required();
    bond_cmd->add_option("--rate-now", bond_args.rate_now, "Short rate at t")->required();
    bond_cmd->add_option("--points", bond_args.points)->capture_default_str();
    bond_cmd->add_option("--output", output, "CSV path");
    bond_cmd->callback([&] { action = [&] { result.main = cmd_bond(bond_args); }; });

    GofArgs gof_args;
    auto* gof_cmd = app.add_subcommand("gof", "Goodness of fit of a law per unit time to a series");
    gof_cmd->add_option("--input", gof_args.input)->required();
    gof_cmd->add_option("--params", gof_args.params, "alpha+,lambda+,alpha-,lambda-")->required();
    gof_cmd->add_option("--dt", gof_args.dt)->capture_default_str();
    gof_cmd->add_option("--output", output, "JSON report path");
    gof_cmd->callback([&] { action = [&] { result.main = cmd_gof(gof_args); }; });

    PdfTableArgs pdf_args;
    auto* pdf_cmd = app.add_subcommand("pdf-table", "Density and distribution function on a uniform grid");
    pdf_cmd->add_option("--params", pdf_args.params, "alpha+,lambda+,alpha-,lambda-")->required();
    pdf_cmd->add_option("--from", pdf_args.from)->required();
    pdf_cmd->add_option("--to", pdf_args.to)->required();
    pdf_cmd->add_option("--points", pdf_args.points)->required();
    pdf_cmd->add_option("--output", output, "CSV path");
    pdf_cmd->callback([&] { action = [&] { result.main = cmd_pdf_table(pdf_args); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << envelope("usage_error", e.what());
        return kExitDomain;
    }

    try {
        action();
        for (const auto& [path, content] : result.files) write_file(path, content);
        if (output.empty()) {
            out << result.main;
        } else {
            write_file(output, result.main);
        }
        return kExitOk;
    } catch (const ParseError& e) {
        err << envelope("parse_error", e.what(), Json{{"line", e.line()}});
        return kExitDomain;
    } catch (const CalibrationError& e) {
        err << envelope("calibration_error", e.what(),
                        Json{{"attainable_low", e.attainable_low()}, {"attainable_high", e.attainable_high()}});
        return kExitDomain;
    } catch (const DomainError& e) {
        err << envelope("domain_error", e.what());
        return kExitDomain;
    } catch (const EstimationError& e) {
        err << envelope("estimation_error", e.what());
        return kExitNumerical;
    } catch (const NumericalError& e) {
        err << envelope("numerical_error", e.what(), Json{{"achieved_tolerance", e.achieved_tolerance()}});
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << envelope("internal_error", e.what());
        return kExitNumerical;
    }
}

}  // namespace bilgamma::cli
