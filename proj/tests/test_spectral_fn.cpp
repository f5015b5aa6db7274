#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "grcf/spectral_fn.hpp"

using grcf::SpectralFn;

namespace {

double gauss_density(double x) { return 1.0 / ((1.0 + x) * std::numbers::ln2); }

// Random smooth function: coefficients decay geometrically like those of an
// analytic function.
SpectralFn random_poly(std::mt19937_64& rng, int degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(degree) + 1);
    double scale = 1.0;
    for (auto& v : c) {
        v = u(rng) * scale;
        scale *= 0.8;
    }
    return SpectralFn(c);
}

}  // namespace

TEST_CASE("from_callable reproduces constants and lines") {
    const auto one = SpectralFn::from_callable([](double) { return 1.0; }, 4);
    REQUIRE(one.degree() == 4);
    CHECK(one.coeffs()[0] == doctest::Approx(1.0).epsilon(1e-15));
    for (int k = 1; k <= 4; ++k) CHECK(std::abs(one.coeffs()[k]) < 1e-15);

    const auto id = SpectralFn::from_callable([](double x) { return x; }, 8);
    CHECK(std::abs(id.eval(0.5) - 0.5) < 1e-14);
    CHECK(std::abs(id.eval(0.0)) < 1e-15);
    CHECK(one.eval(0.3) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Gauss density is resolved to machine precision at degree 64") {
    const auto h = SpectralFn::from_callable(gauss_density, 64);
    double err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = i / 999.0;
        err = std::max(err, std::abs(h.eval(x) - gauss_density(x)));
    }
    CHECK(err < 1e-13);
    CHECK(std::abs(h.eval(0.0) - 1.0 / std::numbers::ln2) < 1e-14);
    CHECK(std::abs(h.integrate() - 1.0) < 1e-12);
    CHECK(std::abs(h.norm_sup() - 1.0 / std::numbers::ln2) < 1e-13);
}

TEST_CASE("non-finite samples are rejected with the node location") {
    try {
        (void)SpectralFn::from_callable([](double x) { return 1.0 / x; }, 8);
        FAIL("expected a domain error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("x = 0") != std::string::npos);
    }
    CHECK_THROWS_AS((void)SpectralFn::from_callable([](double) { return 0.0; }, -1),
                    std::invalid_argument);
}

TEST_CASE("eval outside [0,1] is a domain error") {
    const auto f = SpectralFn::constant(1.0, 3);
    CHECK_THROWS_AS((void)f.eval(-1e-12), std::domain_error);
    CHECK_THROWS_AS((void)f.eval(1.0 + 1e-12), std::domain_error);
    CHECK_THROWS_AS((void)f.eval(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("integration") {
    CHECK(std::abs(SpectralFn::constant(1.0, 16).integrate() - 1.0) <= 1e-15);
    const auto id = SpectralFn::from_callable([](double x) { return x; }, 5);
    CHECK(std::abs(id.integrate() - 0.5) < 1e-15);

    const auto one = SpectralFn::constant(1.0, 10);
    CHECK(std::abs(one.integrate_on(1.0 / 6.0, 1.0 / 5.0) - 1.0 / 30.0) < 1e-15);

    const auto h = SpectralFn::from_callable(gauss_density, 64);
    // closed form: integral of 1/((1+x) ln 2) over (a,b] = log((1+b)/(1+a)) / log 2
    CHECK(std::abs(h.integrate_on(1.0 / 6.0, 1.0 / 5.0) - std::log(36.0 / 35.0) / std::log(2.0)) < 1e-14);
    CHECK(std::abs(h.integrate_on(1.0 / 5.0, 1.0 / 4.0) - std::log(25.0 / 24.0) / std::log(2.0)) < 1e-14);
    CHECK(std::abs(h.integrate_on(1.0 / 6.0, 1.0 / 5.0) - 0.0406420) < 1e-7);
    CHECK(std::abs(h.integrate_on(1.0 / 5.0, 1.0 / 4.0) - 0.0588937) < 1e-7);
    CHECK(h.integrate_on(0.3, 0.3) == 0.0);

    CHECK_THROWS_AS((void)h.integrate_on(0.5, 0.4), std::domain_error);
    CHECK_THROWS_AS((void)h.integrate_on(-0.1, 0.4), std::domain_error);
    CHECK_THROWS_AS((void)h.integrate_on(0.1, 1.5), std::domain_error);
}

TEST_CASE("derivative and norms") {
    const auto c = SpectralFn::constant(3.0, 6);
    const auto dc = c.derivative();
    CHECK(dc.degree() == 5);
    CHECK(dc.norm_sup() == 0.0);
    CHECK(SpectralFn::constant(2.0, 0).derivative().degree() == 0);

    const auto sq = SpectralFn::from_callable([](double x) { return x * x; }, 6);
    CHECK(std::abs(sq.derivative().eval(0.5) - 1.0) < 1e-13);
    CHECK(sq.derivative().degree() == 5);
    // |x^2| + |2x| + |2| on [0,1]
    CHECK(std::abs(sq.norm_cl(2) - 5.0) < 1e-12);
    CHECK(std::abs(sq.norm_cl(0) - 1.0) < 1e-14);
    CHECK_THROWS_AS((void)sq.norm_cl(7), std::invalid_argument);
    CHECK_THROWS_AS((void)sq.norm_cl(-1), std::invalid_argument);
}

TEST_CASE("node values round-trip through from_values") {
    std::mt19937_64 rng(7);
    for (int degree : {0, 1, 8, 33, 128}) {
        const auto f = random_poly(rng, degree);
        const auto values = f.node_values();
        const auto g = SpectralFn::from_values(values);
        const auto nodes = grcf::ChebGrid::get(degree).nodes();
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double v = g.eval(nodes[j]);
            CHECK(std::abs(v - values[j]) <= 1e-13 * std::max(1.0, std::abs(values[j])));
        }
    }
}

TEST_CASE("quadrature weights integrate the interpolant") {
    for (int degree : {8, 32, 128}) {
        const auto& grid = grcf::ChebGrid::get(degree);
        double total = 0.0;
        for (double w : grid.quadrature_weights()) total += w;
        CHECK(std::abs(total - 1.0) < 1e-14);
        const auto h = SpectralFn::from_callable(gauss_density, degree);
        const auto v = h.node_values();
        double q = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) q += grid.quadrature_weights()[j] * v[j];
        CHECK(std::abs(q - h.integrate()) < 1e-14);
    }
}

TEST_CASE("endpoint derivative rows match differentiation") {
    std::mt19937_64 rng(11);
    const auto f = random_poly(rng, 20);
    const auto& grid = grcf::ChebGrid::get(20);
    const auto v = f.node_values();
    SpectralFn d = f;
    for (int order = 0; order <= 4; ++order) {
        for (bool right : {false, true}) {
            const auto row = grid.endpoint_derivative_row(order, right);
            double via_row = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) via_row += row[j] * v[j];
            const double expected = d.eval(right ? 1.0 : 0.0);
            CHECK(std::abs(via_row - expected) <= 1e-11 * std::max(1.0, std::abs(expected)));
        }
        d = d.derivative();
    }
}

TEST_CASE("property: linearity, fundamental theorem, partition additivity") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_poly(rng, 1 + trial % 40);
        const auto g = random_poly(rng, 1 + (trial * 7) % 40);
        const double a = 4.0 * u(rng) - 2.0;
        const double b = 4.0 * u(rng) - 2.0;
        const double x = u(rng);
        const auto combo = grcf::linear_combo({{a, f}, {b, g}});
        CHECK(std::abs(combo.eval(x) - (a * f.eval(x) + b * g.eval(x))) < 1e-13);

        double lo = u(rng);
        double hi = u(rng);
        if (lo > hi) std::swap(lo, hi);
        CHECK(std::abs(f.derivative().integrate_on(lo, hi) - (f.eval(hi) - f.eval(lo))) < 1e-12);

        const double c = u(rng);
        CHECK(std::abs(f.integrate_on(0.0, c) + f.integrate_on(c, 1.0) - f.integrate()) < 1e-13);
    }
}

TEST_CASE("with_degree pads exactly and re-interpolates downward") {
    const auto h = SpectralFn::from_callable(gauss_density, 40);
    const auto up = h.with_degree(80);
    CHECK(up.degree() == 80);
    CHECK(grcf::sup_distance(h, up) == 0.0);
    const auto down = h.with_degree(30);
    CHECK(down.degree() == 30);
    CHECK(grcf::sup_distance(h, down) < 1e-14);
}
