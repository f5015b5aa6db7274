#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "grcf/diagnostics.hpp"

namespace grcf {

enum class OutputFormat { csv, json };

/// Everything a CLI invocation can configure. Defaults match the library defaults.
struct RunConfig {
    std::string subcommand;
    double eps = 0.0;
    int order = 3;
    int degree = 128;
    int a_max = 256;
    int taylor_order = 3;
    int n_max = 100;
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 20240607;
    OutputFormat format = OutputFormat::csv;
    std::string output_path;  ///< empty: stdout

    int grid_points = 101;                        ///< density
    std::vector<double> eps_grid{0.01, 0.02, 0.04};  ///< convergence
    int i_max = 8;                                ///< bounds
    int n_index = 20;                             ///< simulate

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

using TableValue = std::variant<double, std::int64_t, std::string>;

/// A plot-ready result table with its provenance header.
struct Table {
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<std::string> columns;
    std::vector<std::vector<TableValue>> rows;
};

[[nodiscard]] Table cmd_density(const RunConfig& cfg, Diagnostics& diag);
[[nodiscard]] Table cmd_digits(const RunConfig& cfg, Diagnostics& diag);
[[nodiscard]] Table cmd_convergence(const RunConfig& cfg, Diagnostics& diag);
[[nodiscard]] Table cmd_bounds(const RunConfig& cfg, Diagnostics& diag);
[[nodiscard]] Table cmd_simulate(const RunConfig& cfg, Diagnostics& diag);

/// '#'-prefixed provenance lines, one header line, then rows; doubles with 17 significant digits.
[[nodiscard]] std::string to_csv(const Table& table);
/// {"provenance": {...}, "columns": [...], "rows": [{...}, ...]}
[[nodiscard]] std::string to_json(const Table& table);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Validates, dispatches, renders and writes. Data goes to cfg.output_path or
/// out; warnings and errors go to err. Returns the process exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

[[nodiscard]] const char* library_version();

}  // namespace grcf
