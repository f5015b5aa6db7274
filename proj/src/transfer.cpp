#include "grcf/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "grcf/bounds.hpp"
#include "grcf/zeta.hpp"

namespace grcf {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double accumulation_point(MapKind kind) {
    return kind == MapKind::gauss ? 0.0 : 1.0;
}

// Coefficient of f^{(j)}(x*) in the tail sum at y:
//   sign^j / j! * zeta(j + 2, a_max + 1 + y)
// where V_a(y) = x* + sign * 1/(a+y).
std::vector<double> tail_weights(MapKind kind, const TailPolicy& policy, double y) {
    const double sign = kind == MapKind::gauss ? 1.0 : -1.0;
    const double q = static_cast<double>(policy.a_max) + 1.0 + y;
    std::vector<double> w(static_cast<std::size_t>(policy.taylor_order) + 1);
    double scale = 1.0;
    for (int j = 0; j <= policy.taylor_order; ++j) {
        if (j > 0) scale *= sign / j;
        w[j] = scale * hurwitz_zeta(j + 2.0, q);
    }
    return w;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

void TailPolicy::validate() const {
    if (a_max < 8) {
        throw std::invalid_argument("tail policy needs a_max >= 8, got " + std::to_string(a_max));
    }
    if (taylor_order < 0 || taylor_order > 4) {
        throw std::invalid_argument("tail policy taylor_order must be in 0..4, got " +
                                    std::to_string(taylor_order));
    }
}

double tail_error_bound(const SpectralFn& f, const TailPolicy& policy) {
    policy.validate();
    const int order = policy.taylor_order + 1;
    SpectralFn d = f;
    double factorial = 1.0;
    for (int j = 1; j <= order; ++j) {
        d = d.derivative();
        factorial *= j;
    }
    return hurwitz_zeta(policy.taylor_order + 3.0, policy.a_max + 1.0) * d.norm_sup() / factorial;
}

SpectralFn apply_transfer(MapKind kind, const SpectralFn& f, const TailPolicy& policy,
                          int out_degree, Diagnostics* diag) {
    policy.validate();
    if (out_degree < 0) out_degree = std::max(f.degree(), kDefaultDegree);
    const ChebGrid& grid = ChebGrid::get(out_degree);

    std::vector<double> endpoint_derivs(static_cast<std::size_t>(policy.taylor_order) + 1);
    {
        const double x0 = accumulation_point(kind);
        SpectralFn d = f;
        for (int j = 0; j <= policy.taylor_order; ++j) {
            endpoint_derivs[j] = d.eval(x0);
            if (j < policy.taylor_order) d = d.derivative();
        }
    }

    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double y = grid.nodes()[i];
        CompensatedSum sum;
        const auto tw = tail_weights(kind, policy, y);
        for (std::size_t j = 0; j < tw.size(); ++j) sum.add(tw[j] * endpoint_derivs[j]);
        for (int a = policy.a_max; a >= 1; --a) {
            const BranchId branch(a);
            sum.add(branch_derivative(kind, branch, y) * f.eval(inverse_branch(kind, branch, y)));
        }
        values[i] = sum.value();
    }

    const double bound = tail_error_bound(f, policy);
    if (bound > kTailWarnThreshold) {
        warn(diag, "apply_transfer(" + std::string(to_string(kind)) +
                       "): tail truncation bound " + format_double(bound) + " exceeds " +
                       format_double(kTailWarnThreshold));
    }
    return SpectralFn::from_values(values);
}

Eigen::VectorXd OperatorMatrix::apply(const Eigen::VectorXd& node_values) const {
    return entries * node_values;
}

SpectralFn OperatorMatrix::apply(const SpectralFn& f) const {
    const SpectralFn g = f.degree() == degree ? f : f.with_degree(degree);
    const auto v = g.node_values();
    const Eigen::VectorXd out = entries * Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
    return SpectralFn::from_values(std::span<const double>(out.data(), out.size()));
}

OperatorMatrix assemble_operator(MapKind kind, int degree, const TailPolicy& policy) {
    policy.validate();
    if (degree < 8) {
        throw std::invalid_argument("assemble_operator needs degree >= 8, got " +
                                    std::to_string(degree));
    }
    const ChebGrid& grid = ChebGrid::get(degree);
    const auto m = static_cast<Eigen::Index>(grid.size());
    const bool right = kind == MapKind::renyi;

    std::vector<Eigen::RowVectorXd> endpoint_rows;
    for (int j = 0; j <= policy.taylor_order; ++j) {
        const auto r = grid.endpoint_derivative_row(j, right);
        endpoint_rows.emplace_back(Eigen::Map<const Eigen::RowVectorXd>(r.data(), m));
    }

    Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(m, m);
    // Rows are independent; each accumulates the explicit branches and the tail block.
    for (Eigen::Index i = 0; i < m; ++i) {
        const double y = grid.nodes()[i];
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(m);
        const auto tw = tail_weights(kind, policy, y);
        for (std::size_t j = 0; j < tw.size(); ++j) row += tw[j] * endpoint_rows[j];
        for (int a = policy.a_max; a >= 1; --a) {
            const BranchId branch(a);
            const double w = branch_derivative(kind, branch, y);
            const auto interp = grid.interpolation_row(inverse_branch(kind, branch, y));
            row += w * Eigen::Map<const Eigen::RowVectorXd>(interp.data(), m);
        }
        entries.row(i) = row;
    }

    // Collocation conserves mass only up to the resolution of L applied to the
    // cardinal functions. Spread the column-wise mass defect r = q^T - q^T M
    // over constants so that q^T M = q^T holds exactly; on resolved (smooth)
    // inputs r.f is at rounding level and the correction is invisible.
    const Eigen::Map<const Eigen::RowVectorXd> q(grid.quadrature_weights().data(), m);
    const Eigen::RowVectorXd defect = q - q * entries;
    entries.rowwise() += defect;

    return {std::move(entries), degree, kind == MapKind::gauss ? "L0" : "L1",
            kind == MapKind::gauss ? 0.0 : 1.0, policy};
}

OperatorMatrix annealed(double eps, const OperatorMatrix& m0, const OperatorMatrix& m1) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("annealed: eps must lie in [0,1], got " + std::to_string(eps));
    }
    if (m0.degree != m1.degree) {
        throw std::invalid_argument("annealed: degree mismatch (" + std::to_string(m0.degree) +
                                    " vs " + std::to_string(m1.degree) + ")");
    }
    if (m0.eps != 0.0 || m1.eps != 1.0) {
        throw std::invalid_argument("annealed: expects the pure L0 and L1 operators");
    }
    if (eps == 0.0) return m0;
    if (eps == 1.0) return m1;
    std::ostringstream label;
    label.precision(17);
    label << "annealed(" << eps << ")";
    return {(1.0 - eps) * m0.entries + eps * m1.entries, m0.degree, label.str(), eps, m0.policy};
}

double fixed_point_residual(const OperatorMatrix& m, const SpectralFn& h) {
    const SpectralFn g = h.degree() == m.degree ? h : h.with_degree(m.degree);
    const auto v = g.node_values();
    const Eigen::Map<const Eigen::VectorXd> hv(v.data(), static_cast<Eigen::Index>(v.size()));
    return (m.entries * hv - hv).lpNorm<Eigen::Infinity>();
}

SpectralFn invariant_density(const OperatorMatrix& m, Diagnostics* diag) {
    if (m.eps < 0.0 || m.eps > admissible_eps()) {
        warn(diag, "invariant_density: eps = " + format_double(m.eps) +
                       " lies outside the admissible range [0, " + format_double(admissible_eps()) +
                       "]");
    }
    const ChebGrid& grid = ChebGrid::get(m.degree);
    const auto q = grid.quadrature_weights();
    const Eigen::Map<const Eigen::VectorXd> qv(q.data(), static_cast<Eigen::Index>(q.size()));

    Eigen::VectorXd v = Eigen::VectorXd::Ones(qv.size());
    Eigen::VectorXd best = v;
    double residual = std::numeric_limits<double>::infinity();
    int since_improvement = 0;
    for (int it = 0; it < kDensityIterationCap; ++it) {
        Eigen::VectorXd next = m.entries * v;
        next /= qv.dot(next);
        const double r = (m.entries * next - next).lpNorm<Eigen::Infinity>();
        v = std::move(next);
        if (r < residual) {
            residual = r;
            best = v;
            since_improvement = 0;
        } else if (++since_improvement > 200) {
            break;  // stagnated at rounding level
        }
        if (residual < kDensityTolerance) break;
    }
    v = std::move(best);
    // Rounding can leave the residual a hair above 1e-13; the contract is 1e-12.
    if (!(residual < 10.0 * kDensityTolerance)) {
        throw NumericalError("invariant_density: power iteration stalled at residual " +
                                 format_double(residual),
                             residual);
    }

    const double min_value = v.minCoeff();
    if (min_value < -kNegativityTolerance) {
        throw NumericalError("invariant_density: node value " + format_double(min_value) +
                                 " is negative beyond tolerance",
                             residual);
    }
    if (min_value < 0.0) {
        v = v.cwiseMax(0.0);
        warn(diag, "invariant_density: clamped negative node values of magnitude " +
                       format_double(-min_value));
    }
    return SpectralFn::from_values(std::span<const double>(v.data(), v.size()));
}

ResolventSolver::ResolventSolver(const OperatorMatrix& m) : degree_(m.degree) {
    const ChebGrid& grid = ChebGrid::get(m.degree);
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd bordered = Eigen::MatrixXd::Zero(n + 1, n + 1);
    bordered.topLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n) - m.entries;
    bordered.col(n).head(n).setOnes();
    for (Eigen::Index j = 0; j < n; ++j) bordered(n, j) = grid.quadrature_weights()[j];
    lu_.compute(bordered);
    const double rcond = lu_.rcond();
    if (!(rcond > 1e-14)) {
        throw NumericalError("resolvent: bordered system is singular (rcond " +
                                 format_double(rcond) + ")",
                             rcond);
    }
}

SpectralFn ResolventSolver::solve(const SpectralFn& g) const {
    const double mean = g.integrate();
    if (!(std::abs(mean) <= kZeroMeanTolerance)) {
        throw std::invalid_argument("resolvent_solve: right-hand side has mean " +
                                    format_double(mean) + ", expected zero");
    }
    const SpectralFn gd = g.degree() == degree_ ? g : g.with_degree(degree_);
    const auto v = gd.node_values();
    const auto n = static_cast<Eigen::Index>(v.size());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs.head(n) = Eigen::Map<const Eigen::VectorXd>(v.data(), n);
    const Eigen::VectorXd sol = lu_.solve(rhs);
    return SpectralFn::from_values(std::span<const double>(sol.data(), static_cast<std::size_t>(n)));
}

SpectralFn resolvent_solve(const OperatorMatrix& m, const SpectralFn& g) {
    return ResolventSolver(m).solve(g);
}

}  // namespace grcf
