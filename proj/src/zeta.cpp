#include "grcf/zeta.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace grcf {

namespace {

// B_{2j} / (2j)!, j = 1..8
constexpr std::array<double, 8> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
};

}  // namespace

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0) || !(q > 0.0)) {
        throw std::domain_error("hurwitz_zeta requires s > 1 and q > 0 (s=" + std::to_string(s) +
                                ", q=" + std::to_string(q) + ")");
    }
    // Shift far enough that the Bernoulli series converges to double precision.
    const double shift_target = 12.0 + s;
    double head = 0.0;
    double x = q;
    while (x < shift_target) {
        head += std::pow(x, -s);
        x += 1.0;
    }
    double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
    // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
    double rising = s;
    double power = std::pow(x, -s - 1.0);
    const double inv_x2 = 1.0 / (x * x);
    for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
        tail += kBernoulliOverFactorial[j] * rising * power;
        const double m = 2.0 * static_cast<double>(j + 1);
        rising *= (s + m - 1.0) * (s + m);
        power *= inv_x2;
    }
    return head + tail;
}

}  // namespace grcf
