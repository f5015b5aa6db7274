#include "grcf/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"

#include "grcf/bounds.hpp"
#include "grcf/digits.hpp"
#include "grcf/oracle.hpp"
#include "grcf/perturbation.hpp"

#ifndef GRCF_VERSION
#define GRCF_VERSION "0.0.0"
#endif

namespace grcf {

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

TailPolicy policy_of(const RunConfig& cfg) { return {cfg.a_max, cfg.taylor_order}; }

// Common provenance block: config echo, seed and library version.
std::vector<std::pair<std::string, std::string>> provenance(const RunConfig& cfg) {
    std::string grid;
    for (std::size_t i = 0; i < cfg.eps_grid.size(); ++i) {
        grid += (i ? " " : "") + num(cfg.eps_grid[i]);
    }
    return {
        {"tool", "grcf"},
        {"version", library_version()},
        {"subcommand", cfg.subcommand},
        {"eps", num(cfg.eps)},
        {"order", std::to_string(cfg.order)},
        {"degree", std::to_string(cfg.degree)},
        {"a_max", std::to_string(cfg.a_max)},
        {"taylor_order", std::to_string(cfg.taylor_order)},
        {"n_max", std::to_string(cfg.n_max)},
        {"samples", std::to_string(cfg.samples)},
        {"seed", std::to_string(cfg.seed)},
        {"grid_points", std::to_string(cfg.grid_points)},
        {"eps_grid", grid},
        {"i_max", std::to_string(cfg.i_max)},
        {"n_index", std::to_string(cfg.n_index)},
    };
}

void forward_warnings(const Diagnostics& diag, std::ostream& err) {
    for (const auto& w : diag.warnings()) err << "warning: " << w << '\n';
}

std::string render_csv_value(const TableValue& v) {
    if (const auto* d = std::get_if<double>(&v)) return num(*d);
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    const auto& s = std::get<std::string>(v);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

}  // namespace

const char* library_version() { return GRCF_VERSION; }

void RunConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (!(eps >= 0.0 && eps <= 1.0)) fail("--eps must lie in [0,1]");
    if (order < 0) fail("--order must be >= 0");
    if (degree < 8) fail("--degree must be >= 8");
    TailPolicy{a_max, taylor_order}.validate();
    if (n_max < 1) fail("--n-max must be >= 1");
    if (samples < 1) fail("--samples must be >= 1");
    if (grid_points < 2) fail("--grid must be >= 2");
    if (eps_grid.size() < 2) fail("--eps-grid needs at least two values");
    for (double e : eps_grid) {
        if (!(e > 0.0 && e <= 1.0)) fail("--eps-grid values must lie in (0,1]");
    }
    if (i_max < 1) fail("--i-max must be >= 1");
    if (n_index < 1) fail("--n-index must be >= 1");
    if (subcommand == "convergence" && order < 1) fail("convergence needs --order >= 1");
}

Table cmd_density(const RunConfig& cfg, Diagnostics& diag) {
    const MixtureModel model(cfg.degree, policy_of(cfg));
    const PerturbationSeries series = series_mixture(model, cfg.order);
    if (cfg.eps > admissible_eps()) {
        diag.warn("density: eps = " + num(cfg.eps) + " lies outside the admissible range");
    }
    const SpectralFn h = evaluate_series(series, cfg.eps);
    const SpectralFn defect = model.at(cfg.eps).apply(h) - h;

    Table t;
    t.provenance = provenance(cfg);
    t.provenance.emplace_back("tail_bound", num(tail_error_bound(model.h0(), model.policy())));
    t.provenance.emplace_back("residual", num(residual(model, cfg.eps, h)));
    for (std::size_t n = 0; n < series.stage_residuals.size(); ++n) {
        t.provenance.emplace_back(fmt::format("stage_residual_{}", n + 1),
                                  num(series.stage_residuals[n]));
    }
    t.columns = {"x", "h0"};
    for (int n = 1; n <= series.order(); ++n) t.columns.push_back(fmt::format("c{}", n));
    t.columns.insert(t.columns.end(), {"h_eps", "residual"});
    for (int i = 0; i < cfg.grid_points; ++i) {
        const double x = static_cast<double>(i) / (cfg.grid_points - 1);
        std::vector<TableValue> row{x, series.h0.eval(x)};
        for (const SpectralFn& c : series.coeffs) row.emplace_back(c.eval(x));
        row.emplace_back(h.eval(x));
        row.emplace_back(std::abs(defect.eval(x)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table cmd_digits(const RunConfig& cfg, Diagnostics& diag) {
    const MixtureModel model(cfg.degree, policy_of(cfg));
    const PerturbationSeries series = series_mixture(model, cfg.order);
    const DigitLaw law = digit_law(cfg.eps, series, cfg.n_max, &diag);

    Table t;
    t.provenance = provenance(cfg);
    t.provenance.emplace_back("tail_bound", num(tail_error_bound(model.h0(), model.policy())));
    t.provenance.emplace_back("negative_digits", std::to_string(law.negative_digits.size()));
    t.columns = {"N", "p_approx", "p_gauss_kuzmin"};
    double total = 0.0;
    double total_gk = 0.0;
    for (int n = 1; n <= cfg.n_max; ++n) {
        const double p = law.probs[static_cast<std::size_t>(n - 1)];
        const double gk = gauss_kuzmin(n);
        total += p;
        total_gk += gk;
        t.rows.push_back({std::int64_t{n}, p, gk});
    }
    t.rows.push_back({std::string("tail"), law.tail_mass, gauss_kuzmin_tail(cfg.n_max)});
    t.rows.push_back(
        {std::string("total"), total + law.tail_mass, total_gk + gauss_kuzmin_tail(cfg.n_max)});
    return t;
}

Table cmd_convergence(const RunConfig& cfg, Diagnostics& /*diag*/) {
    const MixtureModel model(cfg.degree, policy_of(cfg));
    const ConvergenceStudy study = convergence_study(model, cfg.order, cfg.eps_grid);
    Table t;
    t.provenance = provenance(cfg);
    t.provenance.emplace_back("tail_bound", num(tail_error_bound(model.h0(), model.policy())));
    t.columns = {"eps", "k", "sup_error_vs_eigensolve", "residual", "fitted_slope"};
    for (const ConvergenceRow& r : study.rows) {
        t.rows.push_back({r.eps, std::int64_t{r.k}, r.sup_error, r.residual,
                          study.slopes[static_cast<std::size_t>(r.k - 1)]});
    }
    return t;
}

Table cmd_bounds(const RunConfig& cfg, Diagnostics& /*diag*/) {
    Table t;
    t.provenance = provenance(cfg);
    t.provenance.emplace_back("tail_bound", "n/a (no transfer operator applied)");
    t.columns = {"i", "theta1", "C_i", "eps_max"};
    for (int i = 1; i <= cfg.i_max; ++i) {
        if (i == 1) {
            t.rows.push_back({std::int64_t{1}, std::string("n/a"), std::string("n/a"),
                              std::string("deferred (i=1 case in prior work)")});
            continue;
        }
        const SpectralBounds b = spectral_bounds(i);
        t.rows.push_back({std::int64_t{i}, b.theta1, b.ci, b.eps_max});
    }
    return t;
}

Table cmd_simulate(const RunConfig& cfg, Diagnostics& /*diag*/) {
    SimConfig sim;
    sim.eps = cfg.eps;
    sim.samples = cfg.samples;
    sim.n_index = cfg.n_index;
    sim.seed = cfg.seed;
    const EmpiricalLaw law = simulate_digit_freq(sim, cfg.n_max);
    sim.lead_bit = 1;
    const EmpiricalLaw variant = simulate_digit_freq(sim, cfg.n_max);

    Table t;
    t.provenance = provenance(cfg);
    t.provenance.emplace_back("tail_bound", "n/a (no transfer operator applied)");
    t.provenance.emplace_back("total", std::to_string(law.total));
    t.provenance.emplace_back("rejected", std::to_string(law.rejected));
    t.provenance.emplace_back("rejected_lead1", std::to_string(variant.rejected));
    t.columns = {"N", "count", "frequency", "std_error", "frequency_lead1", "std_error_lead1"};
    for (int n = 1; n <= cfg.n_max; ++n) {
        t.rows.push_back({std::int64_t{n}, law.counts[static_cast<std::size_t>(n - 1)],
                          law.frequency(n), law.std_error(n), variant.frequency(n),
                          variant.std_error(n)});
    }
    const double total = static_cast<double>(law.total);
    t.rows.push_back({std::string("overflow"), law.overflow, law.overflow / total, 0.0,
                      variant.overflow / static_cast<double>(variant.total), 0.0});
    return t;
}

std::string to_csv(const Table& table) {
    std::ostringstream os;
    for (const auto& [k, v] : table.provenance) os << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render_csv_value(row[i]);
        os << '\n';
    }
    return os.str();
}

std::string to_json(const Table& table) {
    nlohmann::ordered_json doc;
    auto& prov = doc["provenance"];
    prov = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.provenance) prov[k] = v;
    doc["columns"] = table.columns;
    auto& rows = doc["rows"];
    rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit([&](const auto& v) { obj[table.columns[i]] = v; }, row[i]);
        }
        rows.push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Diagnostics diag;
    try {
        cfg.validate();
        Table table;
        if (cfg.subcommand == "density") {
            table = cmd_density(cfg, diag);
        } else if (cfg.subcommand == "digits") {
            table = cmd_digits(cfg, diag);
        } else if (cfg.subcommand == "convergence") {
            table = cmd_convergence(cfg, diag);
        } else if (cfg.subcommand == "bounds") {
            table = cmd_bounds(cfg, diag);
        } else if (cfg.subcommand == "simulate") {
            table = cmd_simulate(cfg, diag);
        } else {
            throw std::invalid_argument("unknown subcommand '" + cfg.subcommand + "'");
        }
        const std::string text = cfg.format == OutputFormat::csv ? to_csv(table) : to_json(table);
        forward_warnings(diag, err);
        if (cfg.output_path.empty()) {
            out << text;
        } else {
            std::ofstream file(cfg.output_path, std::ios::binary);
            if (!file || !(file << text)) {
                err << "error: cannot write " << cfg.output_path << '\n';
                return kExitValidation;
            }
        }
        return kExitOk;
    } catch (const NumericalError& e) {
        forward_warnings(diag, err);
        err << "numerical failure: " << e.what() << " (residual " << e.residual() << ")\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::domain_error& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace grcf
