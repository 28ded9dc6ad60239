#pragma once

// Experiment configuration: a flat `key = value` text file with `[section]`
// headers. Keys are addressed as `section.key`; command-line flags override
// file values, which override the per-command defaults.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hcd/coeffs.hpp"
#include "hcd/grid_io.hpp"
#include "hcd/params.hpp"

namespace hcd {

enum class NoiseSource { random, trapezoid };

std::string to_string(NoiseSource source);
NoiseSource parse_noise_source(const std::string& text);

struct ExperimentConfig {
    std::string command = "example1";
    std::string function_id = "example1";
    int r = 2;
    Axis axis = Axis::t_axis;
    std::string run_id;

    SmoothnessParams cls{2.0, 5.6, 5.6, 2.0, 1e-7};

    NoiseSource noise = NoiseSource::random;
    std::vector<double> deltas;   // random: noise levels (0 = noise-free); trapezoid: nominal pairing
    std::vector<double> hs;       // trapezoid steps
    NoiseMode mode = NoiseMode::rescaled;
    int seeds = 5;
    std::uint64_t first_seed = 1;
    bool generic_trapezoid = false;

    std::vector<int> n_values;
    bool use_choose_n = false;
    double c = 0.9;
    std::optional<double> gamma;  // nullopt: midpoint of the admissible interval
    Metric metric = Metric::l2;

    std::filesystem::path output_root = "runs";
    int grid_points = 513;

    /// Throws std::invalid_argument with a one-line reason.
    void validate() const;

    KeyValues to_key_values() const;
    /// Applies every recognised `section.key`; unknown keys are an error.
    void apply(const KeyValues& kv);
};

/// Defaults for `example1` (noise random|trapezoid), `example2`, `rate-study`.
ExperimentConfig default_config(const std::string& command, NoiseSource noise = NoiseSource::random);

/// Parses the sectioned text format into `section.key` pairs.
KeyValues parse_config_text(const std::string& text);
KeyValues read_config_file(const std::filesystem::path& path);
void write_config_file(const ExperimentConfig& config, const std::filesystem::path& path);

/// $HCDERIV_OUTPUT_ROOT if set, else "runs".
std::filesystem::path default_output_root();

}  // namespace hcd
