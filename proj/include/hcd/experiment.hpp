#pragma once

// Experiment runners behind the command-line tool. Each run writes into
// <output_root>/<run_id>/: config.ini, results.csv, results.meta and one
// approx_row<i>.csv (+ .meta) per row holding the recovered derivative's
// coefficients for emit-surface.

#include <filesystem>
#include <string>
#include <vector>

#include "hcd/analysis.hpp"
#include "hcd/config.hpp"

namespace hcd {

struct ResultsRow {
    double delta = 0.0;        // noise level, or the nominal level paired with h
    double h = 0.0;            // trapezoid step, 0 for random noise
    int n = 0;
    double gamma = 1.0;
    double error_l2 = 0.0;     // median over seeds for random noise
    double error_c = 0.0;
    std::size_t card = 0;
    double coeff_error = 0.0;  // measured l_inf coefficient error of the trapezoid grid
    int trials = 1;
    double wall_time = 0.0;    // seconds; the only nondeterministic column

    friend bool operator==(const ResultsRow&, const ResultsRow&) = default;
};

struct ResultsTable {
    std::vector<ResultsRow> rows;
    friend bool operator==(const ResultsTable&, const ResultsTable&) = default;
};

void write_results_csv(const ResultsTable& table, const std::filesystem::path& path);
ResultsTable read_results_csv(const std::filesystem::path& path);

/// Runs example1 / example2 style tables. Writes the run directory unless
/// `write` is false; returns the table either way.
ResultsTable run_table(const ExperimentConfig& config, bool write = true);

/// Rate study with CSV `delta,n,gamma,error_l2,error_c,seed` plus a trailing
/// `# summary` line; also writes summary.meta.
RateStudyResult run_rate_study(const ExperimentConfig& config, bool write = true);
void write_rate_study_csv(const RateStudyResult& result, const std::filesystem::path& path);

struct CrossCardResult {
    struct Row {
        double gamma = 1.0;
        int n = 0;
        std::size_t card = 0;
        double per_n = 0.0;
        double per_n_log_n = 0.0;
    };
    std::vector<Row> rows;
    std::vector<std::string> verdicts;  // one per gamma
};

/// Band check of card/n (gamma > 1) or card/(n ln n) (gamma = 1) with
/// max/min < 2. A single n gives the verdict "insufficient data".
CrossCardResult run_cross_card(const std::vector<double>& gammas, int r, const std::vector<int>& n_list);
void write_cross_card_csv(const CrossCardResult& result, const std::filesystem::path& path);

/// Writes `t,tau,exact,approx` on a grid_points^2 uniform grid for one row of a
/// finished run. Throws std::invalid_argument when the run or row is missing.
std::filesystem::path emit_surface(const std::filesystem::path& output_root, const std::string& run_id,
                                   int row, int grid_points, const std::filesystem::path& out = {});

std::filesystem::path run_directory(const ExperimentConfig& config);

}  // namespace hcd
