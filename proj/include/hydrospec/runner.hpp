#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hydrospec/contour.hpp"
#include "hydrospec/profiles.hpp"
#include "hydrospec/resonance.hpp"

namespace hydrospec {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { Spectrum, Resonances, Track, Validate, SweepAlpha, SweepTau };

Command command_from_string(const std::string& name);
std::string to_string(Command cmd);

// One experiment, fully specified.  Parsed from a JSON config file; scalar
// fields may be overridden from the command line.
struct ExperimentConfig {
    Command command = Command::Validate;

    std::optional<ShearProfile> profile;
    std::optional<EscapeFunction> escape; // defaults to the profile's pairing
    double tau = 0.1;

    double alpha = 1.0;
    std::vector<double> alpha_values; // sweep-alpha
    std::vector<double> tau_values;   // sweep-tau

    double eps = 0.0;
    std::vector<double> eps_grid; // track; built from eps_max/count when absent

    int N = 0; // 0 -> domain default (64 segment, 128 circle)
    Window window{-0.5, 0.5, -0.5, 0.5};
    double band = 0.02;

    double c0 = 0.0;    // center of the study window for contour validation
    double delta = 0.1; // half-width used by the C3 ellipticity check
    Complex seed{0.0, 0.0}; // track: resonance to continue

    int resolved_N() const;
    DeformedContour contour() const;
};

ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& json_text);

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<int> N_override;
    std::optional<double> tau_override;
};

struct RunResult {
    std::filesystem::path csv;
    std::filesystem::path plot;
    std::filesystem::path meta;
    std::optional<std::filesystem::path> ellipticity;
    ValidationReport validation;
};

// Executes the experiment and writes (i) the command CSV, (ii) a line-delimited
// plot-data file, (iii) a run-metadata record, and, for resonance output, the
// ellipticity-curve samples.  Identical configs produce byte-identical CSVs.
// Throws config_error / validation_error / numerical_error.
RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options);

std::string render_report(const ValidationReport& report);

} // namespace hydrospec
