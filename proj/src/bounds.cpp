#include "grcf/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "grcf/zeta.hpp"

namespace grcf {

namespace {

void require_index(int i) {
    if (i < 2) {
        throw std::domain_error(
            "Lasota-Yorke constants need i >= 2 (got " + std::to_string(i) +
            "); the i=1 admissible range is deferred to prior work and has no closed constant");
    }
}

}  // namespace

double zeta_even(int i) {
    if (i < 1) throw std::domain_error("zeta_even requires i >= 1");
    using std::numbers::pi;
    switch (i) {
        case 1: return pi * pi / 6.0;
        case 2: return std::pow(pi, 4) / 90.0;
        case 3: return std::pow(pi, 6) / 945.0;
        case 4: return std::pow(pi, 8) / 9450.0;
        case 5: return std::pow(pi, 10) / 93555.0;
        case 6: return 691.0 * std::pow(pi, 12) / 638512875.0;
        default: return riemann_zeta(2.0 * i);
    }
}

double theta1(int i) {
    require_index(i);
    const double z = zeta_even(i);
    return z * z - (1.0 - std::ldexp(1.0, -2 * i));
}

double ci(int i) {
    require_index(i);
    const double z = zeta_even(i);
    return z * z;
}

double eps_range(int i) {
    const double t = theta1(i);
    return (1.0 - t) / (ci(i) - t);
}

SpectralBounds spectral_bounds(int i) {
    return {i, theta1(i), ci(i), eps_range(i)};
}

double contraction_factor(int i, double eps) {
    return (1.0 - eps) * theta1(i) + eps * ci(i);
}

double admissible_eps() {
    return eps_range(2);
}

}  // namespace grcf
