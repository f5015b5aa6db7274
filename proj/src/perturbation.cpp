#include "grcf/perturbation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace grcf {

namespace {

constexpr double kGMeanTolerance = 1e-9;

double node_residual(const SpectralFn& lhs, const SpectralFn& rhs) {
    const auto a = lhs.node_values();
    const auto b = rhs.with_degree(lhs.degree()).node_values();
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

bool is_zero(const SpectralFn& f) {
    for (double c : f.coeffs()) {
        if (c != 0.0) return false;
    }
    return true;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

void require_order(int k, int minimum) {
    if (k < minimum) {
        throw std::invalid_argument("expansion order must be >= " + std::to_string(minimum) +
                                    ", got " + std::to_string(k));
    }
}

}  // namespace

MixtureModel::MixtureModel(int degree, const TailPolicy& policy)
    : l0_(assemble_operator(MapKind::gauss, degree, policy)),
      l1_(assemble_operator(MapKind::renyi, degree, policy)),
      h0_(invariant_density(l0_)),
      resolvent_(l0_) {}

SpectralFn MixtureModel::difference(const SpectralFn& u) const {
    return l1_.apply(u) - l0_.apply(u);
}

SpectralFn MixtureModel::propagate(const SpectralFn& u) const {
    return resolvent_.solve(difference(u));
}

const SpectralFn& HTable::at(int i, int j) const {
    const auto it = entries_.find({i, j});
    if (it == entries_.end()) {
        throw std::out_of_range("HTable has no entry (" + std::to_string(i) + "," +
                                std::to_string(j) + ") at order " + std::to_string(order_));
    }
    return it->second;
}

PerturbationSeries PerturbationSeries::truncated(int k) const {
    require_order(k, 0);
    if (k > order()) throw std::invalid_argument("cannot truncate a series to a higher order");
    PerturbationSeries out{h0, {coeffs.begin(), coeffs.begin() + k}, {}};
    if (static_cast<int>(stage_residuals.size()) >= k) {
        out.stage_residuals.assign(stage_residuals.begin(), stage_residuals.begin() + k);
    }
    return out;
}

GTerms g_terms_mixture(const MixtureModel& model, int k) {
    require_order(k, 1);
    const SpectralFn& h0 = model.h0();
    SpectralFn g1 = model.l1().apply(h0) - h0;
    const double mean = g1.integrate();
    if (!(std::abs(mean) <= kGMeanTolerance)) {
        throw NumericalError("g_terms_mixture: L1 h0 - h0 has mean " + std::to_string(mean) +
                                 "; L1 does not conserve mass at this discretization",
                             std::abs(mean));
    }
    GTerms out;
    out.g.push_back(std::move(g1));
    // L_eps h0 is affine in eps, so every higher derivative vanishes.
    for (int i = 2; i <= k; ++i) out.g.push_back(SpectralFn::constant(0.0, model.degree()));
    return out;
}

HTable h_table(const MixtureModel& model, const GTerms& g, int k) {
    require_order(k, 1);
    if (g.order() < k) {
        throw std::invalid_argument("h_table: GTerms of order " + std::to_string(g.order()) +
                                    " cannot feed order " + std::to_string(k));
    }
    std::map<std::pair<int, int>, SpectralFn> entries;
    for (int i = 1; i <= k; ++i) {
        const SpectralFn& gi = g.at(i);
        if (is_zero(gi)) {
            for (int j = 0; i + j <= k; ++j) entries.emplace(std::pair{i, j}, SpectralFn::constant(0.0, model.degree()));
            continue;
        }
        // Undifferentiated resolvent term, then d/deps (I - L_eps)^{-1} = (I - L)^{-1} (L1 - L0) (I - L)^{-1}
        // applied j times, each derivative bringing one more factor j.
        SpectralFn power = model.resolvent().solve(gi);
        double factorial = 1.0;
        entries.emplace(std::pair{i, 0}, power);
        for (int j = 1; i + j <= k; ++j) {
            power = model.propagate(power);
            factorial *= j;
            entries.emplace(std::pair{i, j}, factorial * power);
        }
    }
    return HTable(k, std::move(entries));
}

SpectralFn derivative_n(const HTable& h, int n) {
    require_order(n, 1);
    if (n > h.order()) {
        throw std::invalid_argument("derivative_n: n = " + std::to_string(n) +
                                    " exceeds table order " + std::to_string(h.order()));
    }
    std::vector<std::pair<double, SpectralFn>> terms;
    for (int i = 1; i <= n; ++i) terms.emplace_back(binomial(n, i), h.at(i, n - i));
    return linear_combo(terms);
}

PerturbationSeries series_mixture(const MixtureModel& model, int k) {
    require_order(k, 0);
    PerturbationSeries s{model.h0(), {}, {}};
    if (k == 0) return s;
    const SpectralFn rhs1 = g_terms_mixture(model, 1).at(1);
    SpectralFn c = model.resolvent().solve(rhs1);
    const OperatorMatrix& l0 = model.l0();
    s.stage_residuals.push_back(node_residual(c - l0.apply(c), rhs1));
    s.coeffs.push_back(c);
    for (int n = 2; n <= k; ++n) {
        const SpectralFn rhs = model.difference(c);
        c = model.resolvent().solve(rhs);
        s.stage_residuals.push_back(node_residual(c - l0.apply(c), rhs));
        s.coeffs.push_back(c);
    }
    return s;
}

PerturbationSeries series_generic(const MixtureModel& model, int k) {
    require_order(k, 0);
    PerturbationSeries s{model.h0(), {}, {}};
    if (k == 0) return s;
    const HTable table = h_table(model, g_terms_mixture(model, k), k);
    double factorial = 1.0;
    for (int n = 1; n <= k; ++n) {
        factorial *= n;
        s.coeffs.push_back((1.0 / factorial) * derivative_n(table, n));
    }
    return s;
}

SpectralFn evaluate_series(const PerturbationSeries& s, double eps) {
    if (!(eps >= 0.0)) {
        throw std::invalid_argument("evaluate_series: eps must be >= 0, got " + std::to_string(eps));
    }
    std::vector<std::pair<double, SpectralFn>> terms;
    terms.emplace_back(1.0, s.h0);
    double p = 1.0;
    for (const SpectralFn& c : s.coeffs) {
        p *= eps;
        terms.emplace_back(p, c);
    }
    return linear_combo(terms);
}

double residual(const MixtureModel& model, double eps, const SpectralFn& h) {
    return fixed_point_residual(model.at(eps), h);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("loglog_slope needs at least two matching points");
    }
    double mx = 0.0;
    double my = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]) / n;
        my += std::log(y[i]) / n;
    }
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[i]) - my);
    }
    return sxy / sxx;
}

ConvergenceStudy convergence_study(const MixtureModel& model, int k_max,
                                   const std::vector<double>& eps_grid) {
    require_order(k_max, 1);
    const PerturbationSeries full = series_mixture(model, k_max);
    ConvergenceStudy study;
    std::vector<std::vector<double>> errors(static_cast<std::size_t>(k_max));
    for (double eps : eps_grid) {
        const OperatorMatrix m = model.at(eps);
        const SpectralFn reference = invariant_density(m);
        for (int k = 1; k <= k_max; ++k) {
            const SpectralFn approx = evaluate_series(full.truncated(k), eps);
            ConvergenceRow row{eps, k, sup_distance(approx, reference),
                               fixed_point_residual(m, approx)};
            errors[k - 1].push_back(row.sup_error);
            study.rows.push_back(row);
        }
    }
    for (int k = 1; k <= k_max; ++k) study.slopes.push_back(loglog_slope(eps_grid, errors[k - 1]));
    return study;
}

}  // namespace grcf
