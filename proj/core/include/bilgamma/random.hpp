#pragma once

#include <cstdint>
#include <random>

namespace bilgamma {

/// splitmix64 finaliser of (seed, stream): independent 64-bit seeds for the
/// separate random streams derived from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Seed streams used by the library; each consumer owns one.
namespace streams {
inline constexpr std::uint64_t kPathPlus = 1;
inline constexpr std::uint64_t kPathMinus = 2;
inline constexpr std::uint64_t kJumpsPlus = 3;
inline constexpr std::uint64_t kJumpsMinus = 4;
inline constexpr std::uint64_t kMonteCarlo = 5;
}  // namespace streams

/// Deterministic generator with platform-independent variate algorithms
/// (the std distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform();

    /// Standard normal (Marsaglia polar method, no cached spare).
    double normal();

    /// Gamma(shape, rate) variate: Marsaglia-Tsang squeeze for shape >= 1,
    /// Gamma(shape + 1) * U^(1/shape) below 1.
    double gamma(double shape, double rate);

    /// Exponential with the given rate.
    double exponential(double rate);

private:
    std::mt19937_64 engine_;
};

}  // namespace bilgamma
