#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace grcf {

inline constexpr int kDefaultDegree = 128;

/// Number of uniform sample points used for sup-norm estimates.
inline constexpr int kSupGridSize = 2049;

/// Chebyshev-Lobatto collocation data on [0,1] for one polynomial degree.
///
/// Nodes are x_j = (1 - cos(j*pi/n)) / 2, j = 0..n, in ascending order.
/// Instances are immutable and shared through `ChebGrid::get`.
class ChebGrid {
public:
    [[nodiscard]] static const ChebGrid& get(int degree);

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] std::span<const double> nodes() const { return nodes_; }
    [[nodiscard]] std::span<const double> barycentric_weights() const { return bary_; }
    /// Clenshaw-Curtis weights: sum_j w_j f(x_j) integrates the interpolant over [0,1].
    [[nodiscard]] std::span<const double> quadrature_weights() const { return quad_; }

    [[nodiscard]] std::vector<double> values_to_coeffs(std::span<const double> values) const;
    [[nodiscard]] std::vector<double> coeffs_to_values(std::span<const double> coeffs) const;

    /// Values of the nodal cardinal functions at x (one row of an interpolation matrix).
    [[nodiscard]] std::vector<double> interpolation_row(double x) const;

    /// Linear functional mapping node values to the order-th derivative at x = 0
    /// (at_right == false) or x = 1 (at_right == true).
    [[nodiscard]] std::vector<double> endpoint_derivative_row(int order, bool at_right) const;

private:
    explicit ChebGrid(int degree);

    int degree_;
    std::vector<double> nodes_;
    std::vector<double> bary_;
    std::vector<double> quad_;
    std::vector<double> cos_table_;  // cos(m*pi/n), m = 0..2n-1
    std::vector<double> v2c_;        // row-major (n+1)x(n+1), coeff k from value j
};

/// A smooth function on [0,1] held as Chebyshev coefficients of T_k(2x - 1).
///
/// Immutable value type; every operation returns a new function.
class SpectralFn {
public:
    /// The zero function of degree 0.
    SpectralFn() : coeffs_{0.0} {}
    explicit SpectralFn(std::vector<double> coeffs);

    /// Interpolates f at the degree+1 collocation nodes. Throws std::domain_error
    /// naming the node when f returns a non-finite value.
    [[nodiscard]] static SpectralFn from_callable(const std::function<double(double)>& f,
                                                  int degree = kDefaultDegree);
    /// Interpolant through values at the collocation nodes of degree values.size() - 1.
    [[nodiscard]] static SpectralFn from_values(std::span<const double> node_values);
    [[nodiscard]] static SpectralFn constant(double c, int degree = 0);

    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] std::span<const double> coeffs() const { return coeffs_; }

    /// Clenshaw evaluation. Throws std::domain_error for x outside [0,1].
    [[nodiscard]] double eval(double x) const;
    [[nodiscard]] double operator()(double x) const { return eval(x); }

    [[nodiscard]] std::vector<double> node_values() const;

    [[nodiscard]] double integrate() const;
    /// Integral over [lo, hi] through the antiderivative. Requires 0 <= lo <= hi <= 1.
    [[nodiscard]] double integrate_on(double lo, double hi) const;

    /// Exact derivative on the polynomial space; degree drops by one (minimum 0).
    [[nodiscard]] SpectralFn derivative() const;
    /// Antiderivative vanishing at x = 0; degree grows by one.
    [[nodiscard]] SpectralFn antiderivative() const;

    /// Max of |f| over a uniform grid of kSupGridSize points.
    [[nodiscard]] double norm_sup() const;
    /// Sum of sup-norms of derivatives 0..l. Requires 0 <= l <= degree.
    [[nodiscard]] double norm_cl(int l) const;

    /// Same function re-expressed at another degree (zero-padded or re-interpolated).
    [[nodiscard]] SpectralFn with_degree(int degree) const;

    friend SpectralFn operator+(const SpectralFn& a, const SpectralFn& b);
    friend SpectralFn operator-(const SpectralFn& a, const SpectralFn& b);
    friend SpectralFn operator*(double s, const SpectralFn& f);

private:
    std::vector<double> coeffs_;
};

/// sum_i scale_i * f_i; the result has the largest degree among the terms.
[[nodiscard]] SpectralFn linear_combo(std::span<const std::pair<double, SpectralFn>> terms);
[[nodiscard]] SpectralFn linear_combo(std::initializer_list<std::pair<double, SpectralFn>> terms);

/// Max |f - g| over the sup-norm grid.
[[nodiscard]] double sup_distance(const SpectralFn& f, const SpectralFn& g);

}  // namespace grcf
