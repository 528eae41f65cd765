#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bohm/dynamics.hpp"

namespace bohm {

// Flat key = value run description; see parse_config for the key set.
struct RunConfig {
    std::string model = "coherent";  // coherent | free | superposition | tdse:<base>
    double d = 1.0;                  // coherent displacement
    std::vector<double> times{1.0};
    double grid_min = -6.0;
    double grid_max = 6.0;
    int grid_n = 481;
    OdeMethod ode_method = OdeMethod::adaptive;
    double ode_tol = 1e-10;
    double ode_dt_max = 0.01;
    long ensemble_samples = 100000;
    std::uint64_t ensemble_seed = 42;
    int ensemble_bins = 100;
    std::string output_path = "out";
    std::string output_format = "csv+svg";  // csv | csv+svg
};

// Lines of `key = value`, '#' starts a comment, blank lines ignored.
// Unknown keys and malformed values raise ConfigError.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

// Emits every key; parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const RunConfig& config);

// Field-by-field equality (used by the round-trip contract).
bool operator==(const RunConfig& a, const RunConfig& b);

void validate_config(const RunConfig& config);

SolverOptions solver_options(const RunConfig& config);

// Instantiates the configured model; tdse:<base> grid-evolves the base
// model up to the largest requested time.
WaveModel make_model(const RunConfig& config);

}  // namespace bohm
