// grcf: invariant densities and digit laws of the random Gauss-Renyi map.
//
//   grcf density     --eps 0.05 --order 3
//   grcf digits      --eps 0.1 --order 2 --n-max 50
//   grcf convergence --order 3 --eps-grid 0.01,0.02,0.04
//   grcf bounds      --i-max 8
//   grcf simulate    --eps 0.1 --samples 1000000 --n-index 20

#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "grcf/commands.hpp"

int main(int argc, char** argv) {
    grcf::RunConfig cfg;
    CLI::App app{"Taylor expansions of the Gauss-Renyi invariant density and random continued fraction digit laws"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", grcf::library_version());

    app.add_option("--eps", cfg.eps, "probability of choosing the Renyi map")->capture_default_str();
    app.add_option("--order", cfg.order, "expansion order k")->capture_default_str();
    app.add_option("--degree", cfg.degree, "spectral degree")->capture_default_str();
    app.add_option("--a-max", cfg.a_max, "explicit branch cutoff")->capture_default_str();
    app.add_option("--taylor-order", cfg.taylor_order, "tail Taylor order")->capture_default_str();
    app.add_option("--n-max", cfg.n_max, "largest digit reported")->capture_default_str();
    app.add_option("--samples", cfg.samples, "Monte Carlo samples")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
    std::map<std::string, grcf::OutputFormat> formats{{"csv", grcf::OutputFormat::csv},
                                                      {"json", grcf::OutputFormat::json}};
    app.add_option("--format", cfg.format, "csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_option("--out", cfg.output_path, "output file (default stdout)");
    app.add_option("--grid", cfg.grid_points, "density: number of uniform grid points")->capture_default_str();
    app.add_option("--eps-grid", cfg.eps_grid, "convergence: eps values")->delimiter(',');
    app.add_option("--i-max", cfg.i_max, "bounds: largest smoothness index")->capture_default_str();
    app.add_option("--n-index", cfg.n_index, "simulate: digit index n")->capture_default_str();

    const std::pair<const char*, const char*> subcommands[] = {
        {"density", "invariant density, expansion coefficients and residual on a grid"},
        {"digits", "digit law P(N) from the order-k expansion next to Gauss-Kuzmin"},
        {"convergence", "error of the order-k expansion vs the eigensolve over an eps grid"},
        {"bounds", "spectral-gap constants theta1(i), C_i and eps_max(i)"},
        {"simulate", "Monte Carlo frequencies of the n-th digit"},
    };
    for (const auto& [name, help] : subcommands) {
        app.add_subcommand(name, help)->callback([&cfg, name] { cfg.subcommand = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return grcf::kExitValidation;
    }
    return grcf::run(cfg, std::cout, std::cerr);
}
