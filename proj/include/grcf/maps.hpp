#pragma once

#include <cstdint>
#include <string_view>

namespace grcf {

/// The two maps composed at random: Gauss T0(x) = 1/x - floor(1/x) and
/// Renyi T1(x) = 1/(1-x) - floor(1/(1-x)).
enum class MapKind { gauss, renyi };

[[nodiscard]] std::string_view to_string(MapKind kind);

/// Label of a branch of the countable partition; always >= 1.
class BranchId {
public:
    explicit BranchId(std::int64_t a);
    [[nodiscard]] std::int64_t value() const { return a_; }

private:
    std::int64_t a_;
};

/// Digits saturate here; points closer to the accumulation point than
/// 2^-53 carry no usable branch information in double precision.
inline constexpr std::int64_t kMaxDigit = std::int64_t{1} << 53;

/// An interval of [0,1] with explicit endpoint closure.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool closed_lo = false;
    bool closed_hi = false;
    bool empty = true;

    [[nodiscard]] bool contains(double x) const;
    [[nodiscard]] double length() const { return empty ? 0.0 : hi - lo; }
};

/// Gauss cell (1/(a+1), 1/a].
[[nodiscard]] Interval gauss_cell(std::int64_t a);
/// Renyi cell [1 - 1/a, 1 - 1/(a+1)).
[[nodiscard]] Interval renyi_cell(std::int64_t a);

/// Branch index a with x in gauss_cell(a). Requires 0 < x <= 1.
[[nodiscard]] std::int64_t gauss_digit(double x);
/// Branch index a with x in renyi_cell(a). Requires 0 <= x < 1.
[[nodiscard]] std::int64_t renyi_digit(double x);

struct ForwardResult {
    double y = 0.0;
    /// Branch taken; 0 at the fixed-point conventions T0(0) = 0, T1(1) = 0.
    std::int64_t digit = 0;
};

/// One application of T_kind with its branch digit. Requires x in [0,1].
[[nodiscard]] ForwardResult forward(MapKind kind, double x);

/// Inverse of branch a: 1/(a+y) for Gauss, 1 - 1/(a+y) for Renyi.
[[nodiscard]] double inverse_branch(MapKind kind, BranchId a, double y);

/// |V_a'(y)| = 1/(a+y)^2, identical for both maps.
[[nodiscard]] double branch_derivative(MapKind kind, BranchId a, double y);

/// Magnitude of the order-th derivative of the two-step inverse branch
/// V^{outer}_n o V^{inner}_k at x. Mixed compositions share the magnitude of
/// the pure ones: |(V^{renyi,gauss})^{(i)}| = |(V^{gauss,gauss})^{(i)}| and
/// |(V^{gauss,renyi})^{(i)}| = |(V^{renyi,renyi})^{(i)}|.
[[nodiscard]] double two_step_derivative(MapKind outer, MapKind inner, BranchId n, BranchId k,
                                         double x, int order);

}  // namespace grcf
