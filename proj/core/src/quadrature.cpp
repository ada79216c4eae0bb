#include "bilgamma/quadrature.hpp"

#include "bilgamma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

namespace bilgamma {

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
        throw DomainError("QuadratureConfig requires abs_tol > 0, rel_tol > 0, max_subdivisions >= 1");
    }
}

QuadratureConfig parse_tolerance_override(const char* text, QuadratureConfig base) {
    if (text == nullptr || *text == '\0') return base;
    std::string s(text);
    auto parse_double = [&](const std::string& v) {
        char* end = nullptr;
        double d = std::strtod(v.c_str(), &end);
        if (end == v.c_str() || *end != '\0') throw DomainError("malformed tolerance value '" + v + "'");
        return d;
    };
    if (s.find('=') == std::string::npos) {
        base.rel_tol = parse_double(s);
    } else {
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw DomainError("malformed tolerance entry '" + item + "'");
            std::string key = item.substr(0, eq);
            std::string val = item.substr(eq + 1);
            if (key == "abs_tol") {
                base.abs_tol = parse_double(val);
            } else if (key == "rel_tol") {
                base.rel_tol = parse_double(val);
            } else if (key == "max_subdivisions") {
                base.max_subdivisions = static_cast<int>(parse_double(val));
            } else {
                throw DomainError("unknown tolerance key '" + key + "'");
            }
        }
    }
    base.validate();
    return base;
}

const QuadratureConfig& default_quadrature() {
    static const QuadratureConfig cfg = [] {
        QuadratureConfig c;
        if (const char* env = std::getenv("BILGAMMA_TOL")) c = parse_tolerance_override(env, c);
        return c;
    }();
    return cfg;
}

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    bool tail;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class G>
Panel gauss_kronrod(const G& g, double lo, double hi, bool tail) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = g(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    double fv1[7];
    double fv2[7];
    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double dx = half * kXgk[jtw];
        const double f1 = g(center - dx);
        const double f2 = g(center + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[jtw] * (f1 + f2);
        resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double dx = half * kXgk[jtwm1];
        const double f1 = g(center - dx);
        const double f2 = g(center + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += kWgk[jtwm1] * (f1 + f2);
        resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }
    const double result = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    if (!std::isfinite(result)) err = std::numeric_limits<double>::infinity();
    return {lo, hi, result, err, tail};
}

// Globally adaptive bisection over a pool of panels. Finite panels are
// evaluated with `f` in native coordinates, the optional tail panel with `g`
// in the mapped coordinate s in [0, 1).
template <class F, class G>
QuadratureResult adapt(const F& f, const G& g, const std::vector<double>& points, bool with_tail,
                       const QuadratureConfig& cfg) {
    cfg.validate();
    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    auto eval = [&](double lo, double hi, bool tail) {
        return tail ? gauss_kronrod(g, lo, hi, true) : gauss_kronrod(f, lo, hi, false);
    };
    auto push = [&](const Panel& p) {
        total += p.value;
        total_err += p.error;
        heap.push(p);
    };
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i + 1] > points[i])) continue;
        push(eval(points[i], points[i + 1], false));
    }
    if (with_tail) push(eval(0.0, 1.0, true));

    int splits = 0;
    while (!heap.empty()) {
        const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (total_err <= target) {
            return {total, total_err, splits, true};
        }
        if (splits >= cfg.max_subdivisions) break;
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) break;  // exhausted at machine precision
        heap.pop();
        total -= worst.value;
        total_err -= worst.error;
        push(eval(worst.lo, mid, worst.tail));
        push(eval(mid, worst.hi, worst.tail));
        ++splits;
    }
    // Recompute sums from the panels to shed accumulated cancellation.
    double v = 0.0;
    double e = 0.0;
    while (!heap.empty()) {
        v += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    const bool ok = e <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v));
    return {v, e, splits, ok};
}

constexpr auto kNoTail = [](double) { return 0.0; };

}  // namespace

QuadratureResult integrate(FunctionRef f, double a, double b, const QuadratureConfig& cfg) {
    if (a == b) return {0.0, 0.0, 0, true};
    if (a > b) {
        QuadratureResult r = integrate(f, b, a, cfg);
        r.value = -r.value;
        return r;
    }
    return adapt(f, kNoTail, {a, b}, false, cfg);
}

QuadratureResult integrate(FunctionRef f, std::span<const double> points, const QuadratureConfig& cfg) {
    if (points.size() < 2) return {0.0, 0.0, 0, true};
    std::vector<double> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    return adapt(f, kNoTail, pts, false, cfg);
}

QuadratureResult integrate_to_infinity(FunctionRef f, std::span<const double> points, double scale,
                                       const QuadratureConfig& cfg) {
    if (points.empty()) throw DomainError("integrate_to_infinity needs a lower limit");
    if (!(scale > 0.0)) throw DomainError("integrate_to_infinity needs a positive length scale");
    std::vector<double> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    const double base = pts.back();
    auto tail = [&](double s) -> double {
        const double one_minus = 1.0 - s;
        if (one_minus <= 0.0) return 0.0;
        const double t = base + scale * s / one_minus;
        if (!std::isfinite(t)) return 0.0;
        const double val = f(t);
        if (val == 0.0) return 0.0;
        return val * scale / (one_minus * one_minus);
    };
    return adapt(f, tail, pts, true, cfg);
}

QuadratureResult integrate_to_infinity(FunctionRef f, double a, double scale, const QuadratureConfig& cfg) {
    const double pts[1] = {a};
    return integrate_to_infinity(f, std::span<const double>(pts, 1), scale, cfg);
}

}  // namespace bilgamma
