#include "grcf/spectral_fn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace grcf {

namespace {

void check_degree(int degree) {
    if (degree < 0) {
        throw std::invalid_argument("spectral degree must be non-negative, got " +
                                    std::to_string(degree));
    }
}

void check_unit_interval(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream os;
        os.precision(17);
        os << what << ": point " << x << " lies outside [0,1]";
        throw std::domain_error(os.str());
    }
}

double clenshaw(std::span<const double> c, double t) {
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t k = c.size() - 1; k >= 1; --k) {
        const double b0 = c[k] + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c[0] + t * b1 - b2;
}

}  // namespace

// ---------------------------------------------------------------------------
// ChebGrid
// ---------------------------------------------------------------------------

const ChebGrid& ChebGrid::get(int degree) {
    check_degree(degree);
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const ChebGrid>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(degree);
    if (it == cache.end()) {
        it = cache.emplace(degree, std::unique_ptr<const ChebGrid>(new ChebGrid(degree))).first;
    }
    return *it->second;
}

ChebGrid::ChebGrid(int degree) : degree_(degree) {
    const int n = degree;
    const std::size_t m = static_cast<std::size_t>(n) + 1;
    nodes_.resize(m);
    bary_.resize(m);
    quad_.assign(m, 0.0);
    v2c_.assign(m * m, 0.0);

    if (n == 0) {
        nodes_[0] = 0.5;
        bary_[0] = 1.0;
        quad_[0] = 1.0;
        v2c_[0] = 1.0;
        cos_table_ = {1.0};
        return;
    }

    cos_table_.resize(2 * static_cast<std::size_t>(n));
    for (int j = 0; j < 2 * n; ++j) {
        cos_table_[j] = std::cos(std::numbers::pi * j / n);
    }
    for (int j = 0; j <= n; ++j) {
        // sin^2 form keeps the small nodes accurate near x = 0
        const double s = std::sin(std::numbers::pi * j / (2.0 * n));
        nodes_[j] = s * s;
        bary_[j] = ((j % 2 == 0) ? 1.0 : -1.0) * ((j == 0 || j == n) ? 0.5 : 1.0);
    }
    nodes_[n] = 1.0;

    // T_k(t_j) = (-1)^k cos(jk pi / n) for the ascending nodes t_j = -cos(j pi / n)
    for (int k = 0; k <= n; ++k) {
        const double sign_k = (k % 2 == 0) ? 1.0 : -1.0;
        const double scale_k = (k == 0 || k == n) ? 1.0 / n : 2.0 / n;
        for (int j = 0; j <= n; ++j) {
            const double half = (j == 0 || j == n) ? 0.5 : 1.0;
            const double tkj = sign_k * cos_table_[(static_cast<long>(j) * k) % (2 * n)];
            v2c_[k * m + j] = scale_k * half * tkj;
        }
    }
    for (int k = 0; k <= n; k += 2) {
        const double ik = 1.0 / (1.0 - static_cast<double>(k) * k);
        for (std::size_t j = 0; j < m; ++j) {
            quad_[j] += ik * v2c_[k * m + j];
        }
    }
}

std::vector<double> ChebGrid::values_to_coeffs(std::span<const double> values) const {
    const std::size_t m = size();
    if (values.size() != m) {
        throw std::invalid_argument("values_to_coeffs: expected " + std::to_string(m) +
                                    " node values, got " + std::to_string(values.size()));
    }
    std::vector<double> c(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        double acc = 0.0;
        const double* row = &v2c_[k * m];
        for (std::size_t j = 0; j < m; ++j) acc += row[j] * values[j];
        c[k] = acc;
    }
    return c;
}

std::vector<double> ChebGrid::coeffs_to_values(std::span<const double> coeffs) const {
    const std::size_t m = size();
    if (coeffs.size() != m) {
        throw std::invalid_argument("coeffs_to_values: size mismatch");
    }
    if (degree_ == 0) return {coeffs[0]};
    const int n = degree_;
    std::vector<double> v(m, 0.0);
    for (int j = 0; j <= n; ++j) {
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double sign_k = (k % 2 == 0) ? 1.0 : -1.0;
            acc += coeffs[k] * sign_k * cos_table_[(static_cast<long>(j) * k) % (2 * n)];
        }
        v[j] = acc;
    }
    return v;
}

std::vector<double> ChebGrid::interpolation_row(double x) const {
    const std::size_t m = size();
    std::vector<double> row(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        if (x == nodes_[j]) {
            row[j] = 1.0;
            return row;
        }
    }
    double denom = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        row[j] = bary_[j] / (x - nodes_[j]);
        denom += row[j];
    }
    for (double& r : row) r /= denom;
    return row;
}

std::vector<double> ChebGrid::endpoint_derivative_row(int order, bool at_right) const {
    if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
    const std::size_t m = size();
    // d^p/dx^p T_k(2x-1) at t = +-1: 2^p * prod_{l<p} (k^2 - l^2) / (2l + 1)
    std::vector<double> dk(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        double v = 1.0;
        for (int l = 0; l < order; ++l) {
            v *= 2.0 * (static_cast<double>(k) * k - static_cast<double>(l) * l) / (2.0 * l + 1.0);
        }
        if (!at_right && ((k + order) % 2 == 1)) v = -v;
        dk[k] = v;
    }
    std::vector<double> row(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        if (dk[k] == 0.0) continue;
        for (std::size_t j = 0; j < m; ++j) row[j] += dk[k] * v2c_[k * m + j];
    }
    return row;
}

// ---------------------------------------------------------------------------
// SpectralFn
// ---------------------------------------------------------------------------

SpectralFn::SpectralFn(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

SpectralFn SpectralFn::from_callable(const std::function<double(double)>& f, int degree) {
    const ChebGrid& grid = ChebGrid::get(degree);
    std::vector<double> values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.nodes()[j];
        values[j] = f(x);
        if (!std::isfinite(values[j])) {
            std::ostringstream os;
            os.precision(17);
            os << "from_callable: non-finite sample " << values[j] << " at node x = " << x;
            throw std::domain_error(os.str());
        }
    }
    return SpectralFn(grid.values_to_coeffs(values));
}

SpectralFn SpectralFn::from_values(std::span<const double> node_values) {
    if (node_values.empty()) throw std::invalid_argument("from_values: no node values");
    const ChebGrid& grid = ChebGrid::get(static_cast<int>(node_values.size()) - 1);
    return SpectralFn(grid.values_to_coeffs(node_values));
}

SpectralFn SpectralFn::constant(double c, int degree) {
    check_degree(degree);
    std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1, 0.0);
    coeffs[0] = c;
    return SpectralFn(std::move(coeffs));
}

double SpectralFn::eval(double x) const {
    check_unit_interval(x, "eval");
    return clenshaw(coeffs_, 2.0 * x - 1.0);
}

std::vector<double> SpectralFn::node_values() const {
    return ChebGrid::get(degree()).coeffs_to_values(coeffs_);
}

double SpectralFn::integrate() const {
    double acc = 0.0;
    for (std::size_t k = 0; k < coeffs_.size(); k += 2) {
        acc += coeffs_[k] / (1.0 - static_cast<double>(k) * k);
    }
    return acc;
}

double SpectralFn::integrate_on(double lo, double hi) const {
    check_unit_interval(lo, "integrate_on lower bound");
    check_unit_interval(hi, "integrate_on upper bound");
    if (lo > hi) {
        std::ostringstream os;
        os.precision(17);
        os << "integrate_on: reversed bounds [" << lo << ", " << hi << "]";
        throw std::domain_error(os.str());
    }
    if (lo == hi) return 0.0;
    const SpectralFn anti = antiderivative();
    return anti.eval(hi) - anti.eval(lo);
}

SpectralFn SpectralFn::derivative() const {
    const std::size_t n = coeffs_.size() - 1;
    if (n == 0) return SpectralFn({0.0});
    std::vector<double> d(n + 1, 0.0);  // d[n] stays zero, scratch for the recurrence
    for (std::size_t k = n; k >= 1; --k) {
        const double next = (k + 1 <= n) ? d[k + 1] : 0.0;
        d[k - 1] = next + 2.0 * static_cast<double>(k) * coeffs_[k];
    }
    d[0] *= 0.5;
    d.pop_back();
    for (double& v : d) v *= 2.0;  // chain rule for t = 2x - 1
    return SpectralFn(std::move(d));
}

SpectralFn SpectralFn::antiderivative() const {
    const std::size_t n = coeffs_.size() - 1;
    auto c = [&](std::size_t k) { return k <= n ? coeffs_[k] : 0.0; };
    std::vector<double> a(n + 2, 0.0);
    a[1] = c(0) - 0.5 * c(2);
    for (std::size_t k = 2; k <= n + 1; ++k) {
        a[k] = (c(k - 1) - c(k + 1)) / (2.0 * static_cast<double>(k));
    }
    for (double& v : a) v *= 0.5;  // dx = dt / 2
    double at_left = 0.0;
    for (std::size_t k = 1; k < a.size(); ++k) at_left += (k % 2 == 0) ? a[k] : -a[k];
    a[0] = -at_left;
    return SpectralFn(std::move(a));
}

double SpectralFn::norm_sup() const {
    double best = 0.0;
    for (int i = 0; i < kSupGridSize; ++i) {
        const double x = static_cast<double>(i) / (kSupGridSize - 1);
        best = std::max(best, std::abs(clenshaw(coeffs_, 2.0 * x - 1.0)));
    }
    return best;
}

double SpectralFn::norm_cl(int l) const {
    if (l < 0 || l > degree()) {
        throw std::invalid_argument("norm_cl: order " + std::to_string(l) +
                                    " outside [0, degree=" + std::to_string(degree()) + "]");
    }
    double total = 0.0;
    SpectralFn d = *this;
    for (int j = 0; j <= l; ++j) {
        total += d.norm_sup();
        if (j < l) d = d.derivative();
    }
    return total;
}

SpectralFn SpectralFn::with_degree(int degree) const {
    check_degree(degree);
    if (degree == this->degree()) return *this;
    if (degree > this->degree()) {
        std::vector<double> c = coeffs_;
        c.resize(static_cast<std::size_t>(degree) + 1, 0.0);
        return SpectralFn(std::move(c));
    }
    return from_callable([this](double x) { return eval(x); }, degree);
}

SpectralFn operator+(const SpectralFn& a, const SpectralFn& b) {
    return linear_combo({{1.0, a}, {1.0, b}});
}

SpectralFn operator-(const SpectralFn& a, const SpectralFn& b) {
    return linear_combo({{1.0, a}, {-1.0, b}});
}

SpectralFn operator*(double s, const SpectralFn& f) {
    std::vector<double> c = f.coeffs_;
    for (double& v : c) v *= s;
    return SpectralFn(std::move(c));
}

SpectralFn linear_combo(std::span<const std::pair<double, SpectralFn>> terms) {
    std::size_t size = 1;
    for (const auto& [s, f] : terms) size = std::max(size, f.coeffs().size());
    std::vector<double> c(size, 0.0);
    for (const auto& [s, f] : terms) {
        const auto fc = f.coeffs();
        for (std::size_t k = 0; k < fc.size(); ++k) c[k] += s * fc[k];
    }
    return SpectralFn(std::move(c));
}

SpectralFn linear_combo(std::initializer_list<std::pair<double, SpectralFn>> terms) {
    return linear_combo(std::span<const std::pair<double, SpectralFn>>(terms.begin(), terms.size()));
}

double sup_distance(const SpectralFn& f, const SpectralFn& g) {
    return (f - g).norm_sup();
}

}  // namespace grcf
