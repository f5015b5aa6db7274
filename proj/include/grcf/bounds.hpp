#pragma once

namespace grcf {

/// Lasota-Yorke quantities for the annealed Gauss-Renyi operator in C^i.
struct SpectralBounds {
    int i = 2;
    double theta1 = 0.0;   ///< bound on the pure-Gauss two-step contraction
    double ci = 0.0;       ///< bound on the pure-Renyi two-step contraction
    double eps_max = 0.0;  ///< largest eps keeping (1-eps)*theta1 + eps*ci below 1
};

/// zeta(2i): closed even-zeta forms for i <= 6, Euler-Maclaurin beyond.
[[nodiscard]] double zeta_even(int i);

/// zeta(2i)^2 - (1 - 2^{-2i}). Throws std::domain_error for i < 2.
[[nodiscard]] double theta1(int i);
/// zeta(2i)^2.
[[nodiscard]] double ci(int i);
/// (1 - theta1) / (ci - theta1).
[[nodiscard]] double eps_range(int i);
[[nodiscard]] SpectralBounds spectral_bounds(int i);

/// (1 - eps) * theta1(i) + eps * ci(i).
[[nodiscard]] double contraction_factor(int i, double eps);

/// Admissible eps used for range warnings: eps_range(2), the most
/// conservative of the computable indices.
[[nodiscard]] double admissible_eps();

}  // namespace grcf
