#pragma once

#include <string>
#include <vector>

namespace grcf {

/// Collects non-fatal warnings raised during a computation. Warnings never
/// go into data files; the CLI forwards them to stderr.
class Diagnostics {
public:
    void warn(std::string message) { warnings_.push_back(std::move(message)); }
    [[nodiscard]] const std::vector<std::string>& warnings() const { return warnings_; }
    [[nodiscard]] bool empty() const { return warnings_.empty(); }

private:
    std::vector<std::string> warnings_;
};

inline void warn(Diagnostics* diag, std::string message) {
    if (diag) diag->warn(std::move(message));
}

}  // namespace grcf

#include <stdexcept>

namespace grcf {

/// A numerical procedure failed to reach its tolerance (non-convergence,
/// singular system, positivity violation). Carries the last residual.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    [[nodiscard]] double residual() const { return residual_; }

private:
    double residual_;
};

}  // namespace grcf
