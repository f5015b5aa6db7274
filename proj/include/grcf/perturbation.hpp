#pragma once

#include <map>
#include <utility>
#include <vector>

#include "grcf/spectral_fn.hpp"
#include "grcf/transfer.hpp"

namespace grcf {

/// The affine family L_eps = (1 - eps) L0 + eps L1 at a fixed discretization,
/// with the pieces every expansion needs: both operators, the Gauss density
/// h0 = L0 h0, and a factorized zero-mean resolvent of L0.
class MixtureModel {
public:
    explicit MixtureModel(int degree = kDefaultDegree, const TailPolicy& policy = {});

    [[nodiscard]] int degree() const { return l0_.degree; }
    [[nodiscard]] const TailPolicy& policy() const { return l0_.policy; }
    [[nodiscard]] const OperatorMatrix& l0() const { return l0_; }
    [[nodiscard]] const OperatorMatrix& l1() const { return l1_; }
    [[nodiscard]] const SpectralFn& h0() const { return h0_; }
    [[nodiscard]] const ResolventSolver& resolvent() const { return resolvent_; }

    [[nodiscard]] OperatorMatrix at(double eps) const { return annealed(eps, l0_, l1_); }

    /// (L1 - L0) u.
    [[nodiscard]] SpectralFn difference(const SpectralFn& u) const;
    /// (I - L0)^{-1} (L1 - L0) u, the step of the coefficient recursion.
    [[nodiscard]] SpectralFn propagate(const SpectralFn& u) const;

private:
    OperatorMatrix l0_;
    OperatorMatrix l1_;
    SpectralFn h0_;
    ResolventSolver resolvent_;
};

/// G_i = d^i/deps^i L_eps h0 at eps = 0, stored at index i - 1.
struct GTerms {
    std::vector<SpectralFn> g;

    [[nodiscard]] int order() const { return static_cast<int>(g.size()); }
    [[nodiscard]] const SpectralFn& at(int i) const { return g.at(static_cast<std::size_t>(i - 1)); }
};

/// H_{i,j} = d^j/deps^j (I - L_eps)^{-1} G_i at eps = 0, for i >= 1, j >= 0, i + j <= k.
class HTable {
public:
    HTable(int order, std::map<std::pair<int, int>, SpectralFn> entries)
        : order_(order), entries_(std::move(entries)) {}

    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] const SpectralFn& at(int i, int j) const;

private:
    int order_;
    std::map<std::pair<int, int>, SpectralFn> entries_;
};

/// h_eps ~ h0 + sum_n eps^n c_n with c_n the n-th Taylor coefficient.
struct PerturbationSeries {
    SpectralFn h0;
    std::vector<SpectralFn> coeffs;  ///< c_1..c_k
    /// Node sup-norm of (I - L0) c_n - rhs_n for each stage.
    std::vector<double> stage_residuals;

    [[nodiscard]] int order() const { return static_cast<int>(coeffs.size()); }
    /// The first k coefficients only.
    [[nodiscard]] PerturbationSeries truncated(int k) const;
};

/// G_1 = L1 h0 - h0 and G_i = 0 for i >= 2. Throws NumericalError if the
/// mean of G_1 exceeds 1e-9.
[[nodiscard]] GTerms g_terms_mixture(const MixtureModel& model, int k);

/// H_{i,j} = j! [(I - L0)^{-1}(L1 - L0)]^j (I - L0)^{-1} G_i for the affine family.
[[nodiscard]] HTable h_table(const MixtureModel& model, const GTerms& g, int k);

/// n-th eps-derivative of h_eps at 0: sum_{i=1..n} C(n,i) H_{i,n-i}.
[[nodiscard]] SpectralFn derivative_n(const HTable& h, int n);

/// Fast path: c_1 = (I - L0)^{-1} G_1, c_n = (I - L0)^{-1}(L1 - L0) c_{n-1}.
[[nodiscard]] PerturbationSeries series_mixture(const MixtureModel& model, int k);

/// Generic recombination: c_n = derivative_n(h_table(g_terms_mixture)) / n!.
[[nodiscard]] PerturbationSeries series_generic(const MixtureModel& model, int k);

/// h0 + sum_n eps^n c_n. Requires eps >= 0.
[[nodiscard]] SpectralFn evaluate_series(const PerturbationSeries& s, double eps);

/// Node sup-norm of L_eps h - h.
[[nodiscard]] double residual(const MixtureModel& model, double eps, const SpectralFn& h);

struct ConvergenceRow {
    double eps = 0.0;
    int k = 0;
    double sup_error = 0.0;  ///< vs the invariant density of L_eps
    double residual = 0.0;   ///< ||L_eps h - h|| for the order-k series
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    std::vector<double> slopes;  ///< log-log least-squares slope per k = 1..k_max
};

/// Order-k series error against the eigensolve reference on an eps grid.
[[nodiscard]] ConvergenceStudy convergence_study(const MixtureModel& model, int k_max,
                                                 const std::vector<double>& eps_grid);

/// Least-squares slope of log(y) against log(x).
[[nodiscard]] double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace grcf
