#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "grcf/diagnostics.hpp"
#include "grcf/maps.hpp"
#include "grcf/perturbation.hpp"

namespace grcf {

/// Gauss-Kuzmin law log2((1 + 1/N) / (1 + 1/(N+1))). Throws std::domain_error for N < 1.
[[nodiscard]] double gauss_kuzmin(std::int64_t n);

/// Gauss-Kuzmin mass of all digits above n_max: log2(1 + 1/(n_max + 1)).
[[nodiscard]] double gauss_kuzmin_tail(std::int64_t n_max);

/// The x-interval on which digit N appears for one pair of map choices
/// (omega1, omega2), weighted by (1-eps)^pow_gauss * eps^pow_renyi.
struct DigitCell {
    int omega1 = 0;
    int omega2 = 0;
    Interval interval;
    int pow_gauss = 0;
    int pow_renyi = 0;

    [[nodiscard]] double weight(double eps) const;
};

/// Cells in the order (0,0), (0,1), (1,0), (1,1). For N = 1 the two cells
/// with omega2 = 1 are empty.
struct DigitCellDecomposition {
    std::int64_t digit = 1;
    std::array<DigitCell, 4> cells;
};

[[nodiscard]] DigitCellDecomposition digit_cells(std::int64_t n);

/// sum over cells of weight(eps) * integral of h over the cell.
[[nodiscard]] double digit_probability(std::int64_t n, double eps, const SpectralFn& h_eps);

/// digit_probability with h_eps = evaluate_series(s, eps). Warns through diag
/// when eps lies outside the admissible range; the computation proceeds.
[[nodiscard]] double digit_probability(std::int64_t n, double eps, const PerturbationSeries& s,
                                       Diagnostics* diag = nullptr);

inline constexpr int kDefaultDigitMax = 100;
inline constexpr double kNegativeProbabilityFlag = 1e-9;
inline constexpr double kDigitMassTolerance = 1e-8;

struct DigitLaw {
    double eps = 0.0;
    int order = 0;
    std::vector<double> probs;  ///< P(N) at index N - 1
    /// 1 - sum(probs), clamped to 0 when within -1e-8.
    double tail_mass = 0.0;
    /// Gauss-Kuzmin tail beyond n_max, for comparison with tail_mass.
    double tail_estimate = 0.0;
    /// Digits whose probability came out below -1e-9 (series truncation).
    std::vector<std::int64_t> negative_digits;
};

/// Throws NumericalError when 1 - sum(probs) < -1e-8.
[[nodiscard]] DigitLaw digit_law(double eps, const PerturbationSeries& s,
                                 int n_max = kDefaultDigitMax, Diagnostics* diag = nullptr);

}  // namespace grcf
