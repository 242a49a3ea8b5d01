#pragma once

#include <stdexcept>
#include <string>

namespace proxyplan {

/// Malformed scenario, annotation, or input file.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

/// Static or dynamic solve failed to converge. Carries the last residual
/// so callers (e.g. calibration) can decide what to do with the sample.
class SolveError : public std::runtime_error {
public:
    SolveError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const { return residual_; }

private:
    double residual_;
};

}  // namespace proxyplan
