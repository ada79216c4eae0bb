#pragma once

#include "bilgamma/bgdist.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace bilgamma {

struct PathSpec {
    BilateralGammaParams params;
    double horizon;
    double step;
    std::uint64_t seed;

    /// Throws DomainError unless horizon > 0 and 0 < step <= horizon.
    void validate() const;
};

/// Grid values of X = X+ - X- and its two Gamma subordinators.
struct SimulatedPath {
    std::vector<double> times;
    std::vector<double> x_plus;
    std::vector<double> x_minus;
    std::vector<double> x;
};

/// Steps of length `step` from 0 to `horizon` (the last step may be shorter).
/// X+ increments are Gamma(alpha+ dt, lambda+) from stream kPathPlus, X-
/// increments Gamma(alpha- dt, lambda-) from stream kPathMinus.
SimulatedPath simulate_path(const PathSpec& spec);

/// CSV with header time,x,x_plus,x_minus and %.17g numbers.
void write_path_csv(std::ostream& out, const SimulatedPath& path);

/// `count` independent draws of (X+_t, X-_t), the same streams as simulate_path.
struct SubordinatorDraws {
    std::vector<double> x_plus;
    std::vector<double> x_minus;
};
SubordinatorDraws sample_subordinators(const BilateralGammaParams& p, double t, std::size_t count,
                                       std::uint64_t seed);

struct Jump {
    double time;
    double size;  // absolute jump size, >= eps
};

/// Jumps of size >= eps over [0, horizon], per sign, sorted by time.
struct JumpRecord {
    double horizon = 0.0;
    double eps = 0.0;
    std::vector<Jump> positive;
    std::vector<Jump> negative;
};

/// Draws the jumps of size >= eps from the Poisson random measure of the
/// process. Counts are Poisson with mean horizon * alpha * E1(lambda eps),
/// drawn by exact inversion so that a larger eps never yields more jumps for
/// the same seed; sizes use an inverse-CDF table with an E1 tail.
JumpRecord threshold_jumps(const BilateralGammaParams& p, double horizon, double eps, std::uint64_t seed);

struct PathStatistic {
    int n;
    double s_plus;
    double s_minus;
};

/// S_n = #{jumps of size >= e^-n} / (n T) for n = 1..n_max, per sign. Needs
/// record.eps <= e^-n_max.
std::vector<PathStatistic> alpha_path_estimator(const JumpRecord& record, int n_max);

/// Convenience: threshold_jumps with eps = e^-n_max, then the statistic.
std::vector<PathStatistic> alpha_path_estimator(const BilateralGammaParams& p, double horizon, int n_max,
                                                std::uint64_t seed);

}  // namespace bilgamma
