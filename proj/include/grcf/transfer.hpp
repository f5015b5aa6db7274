#pragma once

#include <string>

#include <Eigen/Dense>

#include "grcf/diagnostics.hpp"
#include "grcf/maps.hpp"
#include "grcf/spectral_fn.hpp"

namespace grcf {

/// How the countable branch sum is truncated.
///
/// Branches 1..a_max are summed explicitly. The remaining branches all land
/// near the accumulation point (x = 0 for Gauss, x = 1 for Renyi), so f is
/// replaced there by its Taylor polynomial of order taylor_order and the
/// resulting sums are Hurwitz zeta values.
struct TailPolicy {
    int a_max = 256;
    int taylor_order = 3;

    /// Throws std::invalid_argument unless a_max >= 8 and 0 <= taylor_order <= 4.
    void validate() const;
};

/// zeta(m+3, a_max+1) * sup|f^{(m+1)}| / (m+1)!, the tail truncation bound for f.
[[nodiscard]] double tail_error_bound(const SpectralFn& f, const TailPolicy& policy);

/// Tail bounds above this are reported as warnings.
inline constexpr double kTailWarnThreshold = 1e-8;

/// (L_kind f)(y) = sum_a f(V_a(y)) / (a+y)^2, sampled at the collocation nodes
/// of out_degree (default: max(f.degree(), kDefaultDegree)).
[[nodiscard]] SpectralFn apply_transfer(MapKind kind, const SpectralFn& f,
                                        const TailPolicy& policy = {}, int out_degree = -1,
                                        Diagnostics* diag = nullptr);

/// Collocation discretization of a transfer operator acting on node values.
struct OperatorMatrix {
    Eigen::MatrixXd entries;
    int degree = 0;
    std::string label;
    /// Weight of the Renyi operator in the mixture: 0 for L0, 1 for L1.
    double eps = 0.0;
    TailPolicy policy;

    [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& node_values) const;
    /// Applies the matrix to f, re-expressing f at this degree first if needed.
    [[nodiscard]] SpectralFn apply(const SpectralFn& f) const;
};

/// Column j holds the node values of L_kind applied to the j-th cardinal function.
[[nodiscard]] OperatorMatrix assemble_operator(MapKind kind, int degree = kDefaultDegree,
                                               const TailPolicy& policy = {});

/// (1 - eps) * m0 + eps * m1; m0 and m1 must be L0 and L1 of the same degree.
[[nodiscard]] OperatorMatrix annealed(double eps, const OperatorMatrix& m0, const OperatorMatrix& m1);

inline constexpr double kDensityTolerance = 1e-13;
inline constexpr int kDensityIterationCap = 10000;
inline constexpr double kNegativityTolerance = 1e-10;

/// Fixed point of m normalized to unit mass, by power iteration with
/// quadrature renormalization. Node values in [-1e-10, 0) are clamped to 0
/// (reported through diag); anything more negative is a NumericalError.
[[nodiscard]] SpectralFn invariant_density(const OperatorMatrix& m, Diagnostics* diag = nullptr);

/// Node sup-norm of m*h - h.
[[nodiscard]] double fixed_point_residual(const OperatorMatrix& m, const SpectralFn& h);

inline constexpr double kZeroMeanTolerance = 1e-10;

/// Solves (I - m) u = g on zero-mean functions through the bordered system
///
///     [ I - M   1 ] [u]   [g]
///     [  q^T    0 ] [c] = [0]
///
/// with q the quadrature weights. The factorization is computed once and
/// reused across solves.
class ResolventSolver {
public:
    explicit ResolventSolver(const OperatorMatrix& m);

    /// Throws std::invalid_argument when |integral of g| > kZeroMeanTolerance.
    [[nodiscard]] SpectralFn solve(const SpectralFn& g) const;
    [[nodiscard]] int degree() const { return degree_; }

private:
    int degree_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

[[nodiscard]] SpectralFn resolvent_solve(const OperatorMatrix& m, const SpectralFn& g);

}  // namespace grcf
