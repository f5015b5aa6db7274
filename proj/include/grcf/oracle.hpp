#pragma once

#include <cstdint>
#include <vector>

#include "grcf/maps.hpp"
#include "grcf/spectral_fn.hpp"

namespace grcf {

/// T0(x) for bit 0, T1(x) for bit 1, with T0(0) = 0 and T1(1) = 0.
[[nodiscard]] double step(int omega_bit, double x);

/// Random continued fraction digit b = k + omega2, where k is the branch of
/// omega1 + (-1)^omega1 x, i.e. the Gauss cell of x (omega1 = 0) or the Renyi
/// cell of x (omega1 = 1). Throws std::domain_error when that point is 0.
[[nodiscard]] std::int64_t digit_b(int omega1, int omega2, double x);

struct SimConfig {
    double eps = 0.0;
    std::int64_t samples = 1'000'000;
    int n_index = 20;
    std::uint64_t seed = 20240607;
    int burn_in = 100;
    /// omega'_1, the map choice before the first random bit (0 in the digit process).
    int lead_bit = 0;

    void validate() const;
};

/// Digit counts at index N - 1. Every sample lands in exactly one of counts,
/// overflow (digit > n_max) or rejected (orbit hit a fixed-point convention
/// where the digit is undefined, a measure-zero event).
struct EmpiricalLaw {
    std::vector<std::int64_t> counts;
    std::int64_t overflow = 0;
    std::int64_t rejected = 0;
    std::int64_t total = 0;

    [[nodiscard]] double frequency(std::int64_t n) const;
    /// Binomial standard error sqrt(p(1-p)/total) for digit n.
    [[nodiscard]] double std_error(std::int64_t n) const;
};

/// Draws x ~ U[0,1), bits omega_i ~ Bernoulli(eps), prepends omega'_1 = lead_bit,
/// applies n_index - 1 steps of the random map and records digit_b.
[[nodiscard]] EmpiricalLaw simulate_digit_freq(const SimConfig& cfg, int n_max);

struct Histogram {
    std::vector<std::int64_t> counts;
    std::vector<double> masses;  ///< counts / total; sums to 1
    std::int64_t total = 0;

    [[nodiscard]] int bins() const { return static_cast<int>(counts.size()); }
};

/// Distribution of x after cfg.burn_in random map steps from x ~ U[0,1).
/// Requires burn_in >= 50.
[[nodiscard]] Histogram empirical_density(const SimConfig& cfg, int bins);

/// sum_{a=1}^{a_huge} f(V_a(y)) / (a+y)^2 with no tail model. Requires a_huge >= 1e5.
[[nodiscard]] double brute_force_transfer(MapKind kind, const SpectralFn& f, double y,
                                          std::int64_t a_huge);

}  // namespace grcf
