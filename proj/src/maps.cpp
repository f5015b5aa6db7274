#include "grcf/maps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace grcf {

namespace {

// Largest a in [1, kMaxDigit] with in_cell_prefix(a) true, given that the
// predicate is true at 1 and monotone (true then false). Starts from a guess
// and gallops, so it stays O(log) even where many consecutive cell endpoints
// round to the same double.
template <typename Pred>
std::int64_t last_true(std::int64_t guess, Pred in_cell_prefix) {
    std::int64_t lo = std::clamp<std::int64_t>(guess, 1, kMaxDigit);
    std::int64_t hi;  // first index known false, or kMaxDigit + 1
    if (in_cell_prefix(lo)) {
        std::int64_t step = 1;
        hi = lo + 1;
        while (hi <= kMaxDigit && in_cell_prefix(hi)) {
            lo = hi;
            step *= 2;
            hi = std::min(lo + step, kMaxDigit + 1);
        }
    } else {
        hi = lo;
        std::int64_t step = 1;
        lo = std::max<std::int64_t>(1, hi - step);
        while (lo > 1 && !in_cell_prefix(lo)) {
            hi = lo;
            step *= 2;
            lo = std::max<std::int64_t>(1, hi - step);
        }
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (in_cell_prefix(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

std::string_view to_string(MapKind kind) {
    return kind == MapKind::gauss ? "gauss" : "renyi";
}

BranchId::BranchId(std::int64_t a) : a_(a) {
    if (a < 1) throw std::invalid_argument("branch label must be >= 1, got " + std::to_string(a));
}

bool Interval::contains(double x) const {
    if (empty) return false;
    const bool above = closed_lo ? x >= lo : x > lo;
    const bool below = closed_hi ? x <= hi : x < hi;
    return above && below;
}

Interval gauss_cell(std::int64_t a) {
    if (a < 1) return {};
    return {1.0 / static_cast<double>(a + 1), 1.0 / static_cast<double>(a), false, true, false};
}

Interval renyi_cell(std::int64_t a) {
    if (a < 1) return {};
    return {1.0 - 1.0 / static_cast<double>(a), 1.0 - 1.0 / static_cast<double>(a + 1), true, false,
            false};
}

std::int64_t gauss_digit(double x) {
    if (!(x > 0.0 && x <= 1.0)) {
        throw std::domain_error("gauss_digit requires 0 < x <= 1, got " + std::to_string(x));
    }
    const double inv = 1.0 / x;
    if (inv >= static_cast<double>(kMaxDigit)) return kMaxDigit;
    // Align with the floating-point cell endpoints so cells and digits agree exactly.
    return last_true(static_cast<std::int64_t>(std::floor(inv)),
                     [x](std::int64_t a) { return x <= 1.0 / static_cast<double>(a); });
}

std::int64_t renyi_digit(double x) {
    if (!(x >= 0.0 && x < 1.0)) {
        throw std::domain_error("renyi_digit requires 0 <= x < 1, got " + std::to_string(x));
    }
    const double inv = 1.0 / (1.0 - x);
    if (inv >= static_cast<double>(kMaxDigit)) return kMaxDigit;
    return last_true(static_cast<std::int64_t>(std::floor(inv)),
                     [x](std::int64_t a) { return x >= 1.0 - 1.0 / static_cast<double>(a); });
}

ForwardResult forward(MapKind kind, double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("forward requires x in [0,1], got " + std::to_string(x));
    }
    double y = 0.0;
    std::int64_t a = 0;
    if (kind == MapKind::gauss) {
        if (x == 0.0) return {0.0, 0};
        a = gauss_digit(x);
        y = 1.0 / x - static_cast<double>(a);
    } else {
        if (x == 1.0) return {0.0, 0};
        a = renyi_digit(x);
        y = 1.0 / (1.0 - x) - static_cast<double>(a);
    }
    if (a == kMaxDigit || y < 0.0) y = 0.0;
    if (y >= 1.0) y = std::nextafter(1.0, 0.0);
    return {y, a};
}

double inverse_branch(MapKind kind, BranchId a, double y) {
    const double v = 1.0 / (static_cast<double>(a.value()) + y);
    return kind == MapKind::gauss ? v : 1.0 - v;
}

double branch_derivative(MapKind /*kind*/, BranchId a, double y) {
    const double u = static_cast<double>(a.value()) + y;
    return 1.0 / (u * u);
}

double two_step_derivative(MapKind /*outer*/, MapKind inner, BranchId n, BranchId k, double x,
                           int order) {
    if (order < 1) throw std::invalid_argument("two_step_derivative order must be >= 1");
    const double nn = static_cast<double>(n.value());
    const double u = static_cast<double>(k.value()) + x;
    double factorial = 1.0;
    for (int j = 2; j <= order; ++j) factorial *= j;
    if (inner == MapKind::gauss) {
        // V^{0,0}_{(n,k)}(x) = (k+x) / (n(k+x) + 1)
        return factorial * std::pow(nn, order - 1) / std::pow(nn * u + 1.0, order + 1);
    }
    // V^{1,1}_{(n,k)}(x) = 1 - (k+x) / ((n+1)(k+x) - 1)
    return factorial * std::pow(nn + 1.0, order - 1) / std::pow((nn + 1.0) * u - 1.0, order + 1);
}

}  // namespace grcf
