// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "grcf/bounds.hpp"
#include "grcf/digits.hpp"
#include "grcf/oracle.hpp"
#include "grcf/perturbation.hpp"

using grcf::MapKind;
using grcf::SpectralFn;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit;  ///< seconds; 0 means no limit
    std::function<Outcome()> run;
};

const grcf::MixtureModel& model() {
    static const grcf::MixtureModel m;
    return m;
}

double node_sup(const SpectralFn& f) {
    double s = 0.0;
    for (double v : f.node_values()) s = std::max(s, std::abs(v));
    return s;
}

Outcome fixed_point() {
    const auto l0 = grcf::assemble_operator(MapKind::gauss, 128, {256, 3});
    const auto h0 = grcf::invariant_density(l0);
    const double err = grcf::sup_distance(grcf::apply_transfer(MapKind::gauss, h0, {256, 3}), h0);
    return {err < 1e-10, fmt::format("sup |L0 h0 - h0| = {:.3e} (tol 1e-10)", err)};
}

Outcome gauss_kuzmin_cells() {
    double worst = 0.0;
    for (std::int64_t n = 1; n <= 20; ++n) {
        const auto cell = grcf::gauss_cell(n);
        worst = std::max(worst, std::abs(model().h0().integrate_on(cell.lo, cell.hi) - grcf::gauss_kuzmin(n)));
    }
    return {worst < 1e-10, fmt::format("max error over N = 1..20: {:.3e} (tol 1e-10)", worst)};
}

Outcome four_cells() {
    const auto& h0 = model().h0();
    const double expected[4] = {std::log(36.0 / 35.0) / std::log(2.0), std::log(25.0 / 24.0) / std::log(2.0),
                                std::log(55.0 / 54.0) / std::log(2.0), std::log(36.0 / 35.0) / std::log(2.0)};
    const auto cells = grcf::digit_cells(5).cells;
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& iv = cells[i].interval;
        worst = std::max(worst, std::abs(h0.integrate_on(iv.lo, iv.hi) - expected[i]));
    }
    return {worst < 1e-10, fmt::format("max cell error for N = 5: {:.3e} (tol 1e-10)", worst)};
}

Outcome convergence_orders() {
    const auto study = grcf::convergence_study(model(), 3, {0.01, 0.02, 0.04});
    bool ok = true;
    std::string slopes;
    for (int k = 1; k <= 3; ++k) {
        const double s = study.slopes[static_cast<std::size_t>(k - 1)];
        ok = ok && s >= k + 0.7 && s <= k + 1.3;
        slopes += fmt::format("{}k={}: {:.3f}", k > 1 ? ", " : "", k, s);
    }
    return {ok, "slopes " + slopes + " (target k+1 +- 0.3)"};
}

Outcome path_equivalence() {
    const auto fast = grcf::series_mixture(model(), 3);
    const auto generic = grcf::series_generic(model(), 3);
    double worst = 0.0;
    for (std::size_t n = 0; n < 3; ++n) {
        worst = std::max(worst, grcf::sup_distance(fast.coeffs[n], generic.coeffs[n]));
    }
    return {worst < 1e-9, fmt::format("max coefficient difference k <= 3: {:.3e} (tol 1e-9)", worst)};
}

Outcome resolvent_checks() {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> pole(0.5, 3.0);
    double worst_res = 0.0;
    double worst_neumann = 0.0;
    const auto& l0 = model().l0();
    for (int trial = 0; trial < 20; ++trial) {
        const double p = pole(rng), w = u(rng), a = u(rng), b = u(rng), c = u(rng);
        SpectralFn g = SpectralFn::from_callable(
            [=](double x) { return w / (x + p) + a + x * (b + x * c); }, 128);
        g = g - SpectralFn::constant(g.integrate(), 128);
        const auto sol = model().resolvent().solve(g);
        worst_res = std::max(worst_res, node_sup(sol - l0.apply(sol) - g));

        SpectralFn term = g;
        SpectralFn sum = g;
        for (int n = 0; n < 500 && node_sup(term) > 1e-16; ++n) {
            term = l0.apply(term);
            sum = sum + term;
        }
        worst_neumann = std::max(worst_neumann, node_sup(sum - sol));
    }
    return {worst_res < 1e-9 && worst_neumann < 1e-8,
            fmt::format("residual {:.3e} (tol 1e-9), Neumann difference {:.3e} (tol 1e-8)", worst_res,
                        worst_neumann)};
}

Outcome spectral_bounds() {
    const auto b = grcf::spectral_bounds(2);
    const bool values = std::abs(b.theta1 - 0.2339229) < 1e-6 && std::abs(b.ci - 1.1714229) < 1e-6 &&
                        std::abs(b.eps_max - 0.8171489) < 1e-6;
    bool monotone = true;
    for (int i = 2; i < 8; ++i) {
        monotone = monotone && grcf::theta1(i + 1) < grcf::theta1(i) && grcf::ci(i + 1) < grcf::ci(i);
    }
    return {values && monotone,
            fmt::format("theta1 = {:.7f}, C_2 = {:.7f}, eps_max = {:.7f}, theta1 and C_i decreasing i = 2..8: {}",
                        b.theta1, b.ci, b.eps_max, monotone ? "yes" : "no")};
}

Outcome monte_carlo() {
    grcf::SimConfig cfg;
    cfg.eps = 0.1;
    cfg.n_index = 20;
    cfg.samples = 1000000;
    const auto law = grcf::simulate_digit_freq(cfg, 10);
    const auto s = grcf::series_mixture(model(), 2);
    double worst = 0.0;  // excess over the allowed deviation; must stay <= 0
    for (std::int64_t n = 1; n <= 5; ++n) {
        const double p = grcf::digit_probability(n, cfg.eps, s);
        const double allowed = 3.0 * law.std_error(n) + 2e-3;
        worst = std::max(worst, std::abs(law.frequency(n) - p) / allowed);
    }
    return {worst <= 1.0,
            fmt::format("max |freq - P| / (3 SE + 2e-3) over N = 1..5: {:.3f} (must be <= 1)", worst)};
}

Outcome randomized_properties() {
    std::mt19937_64 rng(9001);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> ueps(0.0, 0.5);
    const auto series = grcf::series_mixture(model(), 3);
    int failures = 0;
    int checks = 0;
    for (int trial = 0; trial < 200; ++trial) {
        ++checks;
        switch (trial % 3) {
            case 0: {  // mass conservation for a random polynomial
                std::vector<double> mono(6);
                for (auto& v : mono) v = u(rng);
                const auto f = SpectralFn::from_callable(
                    [&](double x) {
                        double acc = 0.0;
                        for (auto it = mono.rbegin(); it != mono.rend(); ++it) acc = acc * x + *it;
                        return acc;
                    },
                    8);
                const MapKind kind = trial % 2 == 0 ? MapKind::gauss : MapKind::renyi;
                if (std::abs(grcf::apply_transfer(kind, f).integrate() - f.integrate()) >= 1e-10) ++failures;
                // positivity: a nonnegative input stays nonnegative up to the tail bound
                const auto sq = SpectralFn::from_callable([&](double x) { return f(x) * f(x); }, 16);
                const double slack = grcf::tail_error_bound(sq, {});
                for (double v : grcf::apply_transfer(kind, sq).node_values()) {
                    if (v < -slack) {
                        ++failures;
                        break;
                    }
                }
                break;
            }
            case 1: {  // zero-mean closure of R (L1 - L0)
                std::vector<double> c(12);
                double scale = 1.0;
                for (auto& v : c) {
                    v = u(rng) * scale;
                    scale *= 0.7;
                }
                SpectralFn g(c);
                g = g - SpectralFn::constant(g.integrate(), 11);
                if (std::abs(model().propagate(g).integrate()) >= 1e-12) ++failures;
                const auto& coeff = series.coeffs[static_cast<std::size_t>(trial % 3)];
                if (std::abs(coeff.integrate()) >= 1e-12) ++failures;
                break;
            }
            default: {  // digit-law normalization
                const double eps = ueps(rng);
                const auto law = grcf::digit_law(eps, series, 100);
                double total = law.tail_mass;
                for (double p : law.probs) total += p;
                if (std::abs(total - 1.0) >= 1e-8) ++failures;
                break;
            }
        }
    }
    return {failures == 0, fmt::format("{} of {} randomized checks failed", failures, checks)};
}

Outcome digit_cell_agreement() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    int mismatches = 0;
    int triples = 0;
    while (triples < 10000) {
        const int w1 = coin(rng);
        const int w2 = coin(rng);
        const double x = u(rng);
        if ((w1 == 0 && x == 0.0) || (w1 == 1 && x == 1.0)) continue;
        ++triples;
        const std::int64_t d = grcf::digit_b(w1, w2, x);
        const auto slot = static_cast<std::size_t>(2 * w1 + w2);
        for (std::int64_t n = std::max<std::int64_t>(1, d - 2); n <= d + 2; ++n) {
            if (grcf::digit_cells(n).cells[slot].interval.contains(x) != (n == d)) ++mismatches;
        }
    }
    return {mismatches == 0, fmt::format("{} mismatches over {} triples", mismatches, triples)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Gauss fixed point", 5.0, fixed_point},
        {2, "Gauss-Kuzmin cell integrals", 0.0, gauss_kuzmin_cells},
        {3, "four-cell decomposition N = 5", 0.0, four_cells},
        {4, "convergence order k = 1..3", 60.0, convergence_orders},
        {5, "generic vs mixture path", 0.0, path_equivalence},
        {6, "resolvent residual and Neumann cross-check", 0.0, resolvent_checks},
        {7, "spectral bound constants", 0.0, spectral_bounds},
        {8, "Monte Carlo digit frequencies", 120.0, monte_carlo},
        {9, "randomized properties", 0.0, randomized_properties},
        {10, "digit/cell agreement", 0.0, digit_cell_agreement},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0.0 && secs >= c.time_limit) {
            out.pass = false;
            out.detail += fmt::format("; exceeded {:.0f} s budget", c.time_limit);
        }
        if (!out.pass) ++failed;
        std::printf("[%s] %2d %s: %s [%.2f s]\n", out.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    out.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
