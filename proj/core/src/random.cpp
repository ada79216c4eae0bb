#include "bilgamma/random.hpp"

#include "bilgamma/errors.hpp"

#include <cmath>

namespace bilgamma {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
    for (;;) {
        const double u = 2.0 * uniform() - 1.0;
        const double v = 2.0 * uniform() - 1.0;
        const double s = u * u + v * v;
        if (s >= 1.0 || s == 0.0) continue;
        return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double Rng::exponential(double rate) {
    if (!(rate > 0.0)) throw DomainError("exponential requires rate > 0");
    return -std::log(uniform()) / rate;
}

double Rng::gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) throw DomainError("gamma requires shape > 0 and rate > 0");
    if (shape < 1.0) {
        // ln of G(shape+1) U^(1/shape); exp underflows to 0 for tiny shapes.
        const double g = gamma(shape + 1.0, 1.0);
        return std::exp(std::log(g) + std::log(uniform()) / shape) / rate;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

}  // namespace bilgamma
