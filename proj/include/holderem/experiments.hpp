#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "holderem/estimators.hpp"
#include "holderem/io.hpp"

namespace holderem {

struct GronwallSettings {
    double t0 = 0.0;
    double horizon = 1.0;
    double h = 1e-5;
    double a = 1.0;
    double c = 1.0;
    double premise_tolerance = 1e-4;
    double tolerance = 1e-9;
};

/// One experiment run. Optional fields fall back to per-experiment defaults
/// (see docs/config.md).
struct ExperimentConfig {
    std::string experiment;
    Json model = "arctan_tan";
    std::vector<std::size_t> n_list;
    double p = 2.0;
    std::optional<std::size_t> samples;
    std::uint64_t seed = 20240501;
    std::size_t threads = 1;
    double horizon = 1.0;
    std::vector<double> x{1.0};
    std::optional<std::vector<double>> y;
    std::size_t finest_n = 0;
    std::size_t replications = 200;
    std::string functional = "x";
    std::size_t trials = 10000;
    std::vector<double> p_list{2.0, 4.0};
    HolderSweepConfig sweep;
    GronwallSettings gronwall;
    bool drop_diverged = false;
    std::string out;
};

const std::vector<std::string>& experiment_names();

/// Strict parse: unknown fields and wrong types throw ConfigError with the
/// field path.
ExperimentConfig config_from_json(const Json& j);

/// One CSV record; empty optionals print as empty cells.
struct CsvRow {
    std::string experiment;
    std::string model;
    std::optional<std::size_t> n;
    std::optional<double> p;
    std::optional<std::size_t> samples;
    std::uint64_t seed = 0;
    std::string stat;
    double estimate = 0.0;
    std::optional<double> std_error;
    std::optional<double> bound;
    std::optional<double> quotient;
};

/// experiment,model,n,p,M,seed,stat,estimate,std_error,bound,quotient
std::string csv_header();
/// Numbers use printf %.17g, so they round-trip exactly.
std::string csv_line(const CsvRow& row);
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);

struct Outcome {
    std::vector<CsvRow> rows;
    std::vector<std::string> summary;
    bool passed = true;
};

/// Runs the configured experiment; `passed` reflects its acceptance check.
Outcome run_experiment(const ExperimentConfig& config);

} // namespace holderem
