#pragma once

#include <string>

#include "pavg/operators.hpp"
#include "pavg/paverage.hpp"
#include "pavg/solver.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace pavg {

/// Error in user-supplied files/flags; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CSV with one "value" or "value,weight" per line (weight defaults to 1).
/// Blank lines and lines starting with '#' are skipped.
WeightedSample read_sample_csv(const std::string& path);

/// Write-then-rename so readers never observe partial output.
void write_text_atomic(const std::string& path, const std::string& content);
void write_json_atomic(const std::string& path, const nlohmann::json& j);

nlohmann::json p_average_to_json(const PAverageResult& r);

/// Dirichlet problem description:
/// { dimension, domain, epsilon, stencil, p, boundary, tol, max_iters, sweep }
struct ProblemConfig {
    int dimension = 2;
    Domain domain;
    double epsilon = 0.1;
    std::string stencil = "hexagon";  // "hexagon" (triangular lattice) or "d4"
    double p = 4.0;
    ScalarField boundary;
    double tol = 1e-10;
    long max_iters = 1000000;
    Sweep sweep = Sweep::jacobi;
    bool has_reference = false;  // boundary field has an analytic extension
};

ProblemConfig parse_problem_json(const nlohmann::json& j);
ProblemConfig load_problem_file(const std::string& path);

/// Probe description: either explicit {base_point, base_value, gradient,
/// hessian} or {"field": name, "at": [...]}.
QuadraticProbe parse_probe_json(const nlohmann::json& j);
QuadraticProbe load_probe_file(const std::string& path);

std::string direction_set_csv(const DirectionSet& set);

}  // namespace pavg
