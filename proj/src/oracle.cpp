#include "grcf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace grcf {

namespace {

constexpr std::int64_t kBlockSize = 1 << 16;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Uniform on [0,1) with 53 random bits; avoids the implementation-defined
// std::uniform_real_distribution so runs are reproducible across toolchains.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t block) : engine_(splitmix64(seed ^ splitmix64(block))) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    int bit(double eps) { return uniform() < eps ? 1 : 0; }

private:
    std::mt19937_64 engine_;
};

// Runs body(block_index, stream, first, count) over fixed blocks on a thread
// pool. Block boundaries and seeds do not depend on the thread count.
template <typename Result, typename Body>
std::vector<Result> run_blocks(std::uint64_t seed, std::int64_t samples, Body body) {
    const std::int64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
    std::vector<Result> results(static_cast<std::size_t>(blocks));
    const unsigned threads =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(std::max<std::int64_t>(blocks, 1))));
    auto worker = [&](unsigned t) {
        for (std::int64_t b = t; b < blocks; b += threads) {
            Stream stream(seed, static_cast<std::uint64_t>(b));
            const std::int64_t count = std::min(kBlockSize, samples - b * kBlockSize);
            results[static_cast<std::size_t>(b)] = body(stream, count);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    }
    return results;
}

bool digit_defined(int omega1, double x) {
    return omega1 == 0 ? x != 0.0 : x != 1.0;
}

}  // namespace

double step(int omega_bit, double x) {
    return forward(omega_bit == 0 ? MapKind::gauss : MapKind::renyi, x).y;
}

std::int64_t digit_b(int omega1, int omega2, double x) {
    if ((omega1 != 0 && omega1 != 1) || (omega2 != 0 && omega2 != 1)) {
        throw std::invalid_argument("digit_b: map choices must be 0 or 1");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("digit_b requires x in [0,1], got " + std::to_string(x));
    }
    if (!digit_defined(omega1, x)) {
        throw std::domain_error("digit_b: transformed point is 0, digit undefined");
    }
    const std::int64_t k = omega1 == 0 ? gauss_digit(x) : renyi_digit(x);
    return k + omega2;
}

void SimConfig::validate() const {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("simulation eps must lie in [0,1], got " + std::to_string(eps));
    }
    if (samples < 1) throw std::invalid_argument("simulation needs samples >= 1");
    if (n_index < 1) throw std::invalid_argument("digit index n must be >= 1");
    if (burn_in < 0) throw std::invalid_argument("burn_in must be >= 0");
    if (lead_bit != 0 && lead_bit != 1) throw std::invalid_argument("lead_bit must be 0 or 1");
}

double EmpiricalLaw::frequency(std::int64_t n) const {
    if (n < 1 || n > static_cast<std::int64_t>(counts.size()) || total == 0) return 0.0;
    return static_cast<double>(counts[static_cast<std::size_t>(n - 1)]) / static_cast<double>(total);
}

double EmpiricalLaw::std_error(std::int64_t n) const {
    if (total == 0) return 0.0;
    const double p = frequency(n);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

EmpiricalLaw simulate_digit_freq(const SimConfig& cfg, int n_max) {
    cfg.validate();
    if (n_max < 1) throw std::invalid_argument("simulate_digit_freq needs n_max >= 1");
    const auto size = static_cast<std::size_t>(n_max);
    auto blocks = run_blocks<EmpiricalLaw>(cfg.seed, cfg.samples, [&](Stream& rng, std::int64_t count) {
        EmpiricalLaw law;
        law.counts.assign(size, 0);
        for (std::int64_t s = 0; s < count; ++s) {
            double x = rng.uniform();
            int current = cfg.lead_bit;
            for (int n = 1; n < cfg.n_index; ++n) {
                x = step(current, x);
                current = rng.bit(cfg.eps);
            }
            const int next = rng.bit(cfg.eps);
            ++law.total;
            if (!digit_defined(current, x)) {
                ++law.rejected;
                continue;
            }
            const std::int64_t d = digit_b(current, next, x);
            if (d <= n_max) {
                ++law.counts[static_cast<std::size_t>(d - 1)];
            } else {
                ++law.overflow;
            }
        }
        return law;
    });
    EmpiricalLaw out;
    out.counts.assign(size, 0);
    for (const EmpiricalLaw& b : blocks) {
        for (std::size_t i = 0; i < size; ++i) out.counts[i] += b.counts[i];
        out.overflow += b.overflow;
        out.rejected += b.rejected;
        out.total += b.total;
    }
    return out;
}

Histogram empirical_density(const SimConfig& cfg, int bins) {
    cfg.validate();
    if (cfg.burn_in < 50) throw std::invalid_argument("empirical_density needs burn_in >= 50");
    if (bins < 1) throw std::invalid_argument("empirical_density needs bins >= 1");
    const auto size = static_cast<std::size_t>(bins);
    auto blocks = run_blocks<std::vector<std::int64_t>>(
        cfg.seed, cfg.samples, [&](Stream& rng, std::int64_t count) {
            std::vector<std::int64_t> counts(size, 0);
            for (std::int64_t s = 0; s < count; ++s) {
                double x = rng.uniform();
                for (int n = 0; n < cfg.burn_in; ++n) x = step(rng.bit(cfg.eps), x);
                auto bin = static_cast<std::size_t>(x * bins);
                ++counts[std::min(bin, size - 1)];
            }
            return counts;
        });
    Histogram h;
    h.counts.assign(size, 0);
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < size; ++i) h.counts[i] += b[i];
    }
    h.total = cfg.samples;
    h.masses.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        h.masses[i] = static_cast<double>(h.counts[i]) / static_cast<double>(h.total);
    }
    return h;
}

double brute_force_transfer(MapKind kind, const SpectralFn& f, double y, std::int64_t a_huge) {
    if (a_huge < 100000) throw std::invalid_argument("brute_force_transfer needs a_huge >= 1e5");
    double sum = 0.0;
    double comp = 0.0;
    for (std::int64_t a = a_huge; a >= 1; --a) {
        const BranchId branch(a);
        const double v = branch_derivative(kind, branch, y) * f.eval(inverse_branch(kind, branch, y));
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

}  // namespace grcf
