#pragma once

namespace grcf {

/// Hurwitz zeta sum_{a>=0} (a + q)^{-s} for s > 1, q > 0.
///
/// Direct summation until the shifted argument is large, then an
/// Euler-Maclaurin tail with eight Bernoulli corrections.
[[nodiscard]] double hurwitz_zeta(double s, double q);

/// Riemann zeta for s > 1.
[[nodiscard]] inline double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

}  // namespace grcf
