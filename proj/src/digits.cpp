#include "grcf/digits.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "grcf/bounds.hpp"

namespace grcf {

namespace {

void require_digit(std::int64_t n) {
    if (n < 1) throw std::domain_error("digit must be >= 1, got " + std::to_string(n));
}

void check_eps(double eps, Diagnostics* diag) {
    if (!(eps >= 0.0 && eps <= admissible_eps())) {
        warn(diag, "digit probabilities: eps = " + std::to_string(eps) +
                       " lies outside the admissible range [0, " + std::to_string(admissible_eps()) +
                       "]");
    }
}

double cell_mass(const SpectralFn& h, const Interval& cell) {
    if (cell.empty) return 0.0;
    return h.integrate_on(cell.lo, cell.hi);
}

}  // namespace

double gauss_kuzmin(std::int64_t n) {
    require_digit(n);
    const double nd = static_cast<double>(n);
    // log((1+1/N)/(1+1/(N+1))) = log1p(1/(N(N+2)))
    return std::log1p(1.0 / (nd * (nd + 2.0))) / std::numbers::ln2;
}

double gauss_kuzmin_tail(std::int64_t n_max) {
    if (n_max < 0) throw std::domain_error("gauss_kuzmin_tail requires n_max >= 0");
    return std::log1p(1.0 / (static_cast<double>(n_max) + 1.0)) / std::numbers::ln2;
}

double DigitCell::weight(double eps) const {
    return std::pow(1.0 - eps, pow_gauss) * std::pow(eps, pow_renyi);
}

DigitCellDecomposition digit_cells(std::int64_t n) {
    require_digit(n);
    // b(omega, x) = k + omega2 with k the branch of x under T_{omega1}, so
    // omega2 = 1 shifts to branch N - 1, which does not exist for N = 1.
    auto cell = [n](int w1, int w2) {
        const std::int64_t k = n - w2;
        DigitCell c;
        c.omega1 = w1;
        c.omega2 = w2;
        c.interval = w1 == 0 ? gauss_cell(k) : renyi_cell(k);
        c.pow_gauss = (w1 == 0) + (w2 == 0);
        c.pow_renyi = w1 + w2;
        return c;
    };
    return {n, {cell(0, 0), cell(0, 1), cell(1, 0), cell(1, 1)}};
}

double digit_probability(std::int64_t n, double eps, const SpectralFn& h_eps) {
    double p = 0.0;
    for (const DigitCell& c : digit_cells(n).cells) p += c.weight(eps) * cell_mass(h_eps, c.interval);
    return p;
}

double digit_probability(std::int64_t n, double eps, const PerturbationSeries& s, Diagnostics* diag) {
    check_eps(eps, diag);
    return digit_probability(n, eps, evaluate_series(s, eps));
}

DigitLaw digit_law(double eps, const PerturbationSeries& s, int n_max, Diagnostics* diag) {
    if (n_max < 1) throw std::invalid_argument("digit_law requires n_max >= 1");
    check_eps(eps, diag);
    const SpectralFn h = evaluate_series(s, eps);
    DigitLaw law;
    law.eps = eps;
    law.order = s.order();
    double total = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const double p = digit_probability(n, eps, h);
        if (p < -kNegativeProbabilityFlag) {
            law.negative_digits.push_back(n);
            warn(diag, "digit_law: P(" + std::to_string(n) + ") = " + std::to_string(p) +
                           " is negative (series truncation)");
        }
        law.probs.push_back(p);
        total += p;
    }
    double tail = 1.0 - total;
    if (tail < -kDigitMassTolerance) {
        throw NumericalError("digit_law: probabilities sum to " + std::to_string(total) +
                                 ", exceeding 1 by more than 1e-8",
                             -tail);
    }
    law.tail_mass = tail < 0.0 ? 0.0 : tail;
    law.tail_estimate = gauss_kuzmin_tail(n_max);
    return law;
}

}  // namespace grcf
