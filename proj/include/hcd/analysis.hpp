#pragma once

// Error metrics in L2(Q) and C(Q) and empirical convergence-rate studies.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hcd/test_function.hpp"
#include "hcd/truncation.hpp"

namespace hcd {

inline constexpr int kDefaultCGridPoints = 513;

/// Measures an ApproxDerivative against a fixed reference surface. The
/// reference is sampled once on the Gauss grid (L2) and on the uniform grid
/// including endpoints (C), so repeated trials only pay for the synthesis.
class ErrorEvaluator {
public:
    ErrorEvaluator(Surface exact, int quad_nodes, int grid_points = kDefaultCGridPoints,
                   std::vector<double> breaks_t = {}, std::vector<double> breaks_tau = {});

    /// Reference = the analytic order-r derivative of fn, sampled as an outer
    /// product of its two factors.
    ErrorEvaluator(const TestFunction& fn, int r, Axis axis, int quad_nodes,
                   int grid_points = kDefaultCGridPoints);

    double l2(const ApproxDerivative& approx) const;
    double c(const ApproxDerivative& approx) const;
    double l2(const Grid2D& coeffs) const;
    double c(const Grid2D& coeffs) const;

    int quad_nodes() const noexcept { return quad_nodes_; }
    int grid_points() const noexcept { return static_cast<int>(uniform_.size()); }

private:
    int quad_nodes_;
    QuadRule rule_t_;
    QuadRule rule_tau_;
    std::vector<double> uniform_;
    Grid2D exact_gauss_;
    Grid2D exact_uniform_;
};

/// Tensor Gauss approximation of ||approx - exact||_{L2(Q)}; quad_nodes >= degree + 32.
double l2_error(const ApproxDerivative& approx, const Surface& exact, int quad_nodes);

/// max |approx - exact| over a uniform grid_points^2 grid including the corners;
/// grid_points >= 257.
double c_error(const ApproxDerivative& approx, const Surface& exact, int grid_points = kDefaultCGridPoints);

/// Uniform points on [-1, 1] including both endpoints.
std::vector<double> uniform_points(int count);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> values);

struct RateTrial {
    double delta = 0.0;
    int n = 0;
    double gamma = 1.0;
    std::uint64_t seed = 0;
    double error_l2 = 0.0;
    double error_c = 0.0;
    std::size_t card = 0;
    friend bool operator==(const RateTrial&, const RateTrial&) = default;
};

struct RateStudyResult {
    Metric metric = Metric::l2;
    std::vector<double> deltas;
    std::vector<double> errors;  // median over seeds in the chosen metric, per delta
    std::vector<RateTrial> trials;
    double fitted_slope = 0.0;
    double theoretical_slope = 0.0;

    friend bool operator==(const RateStudyResult&, const RateStudyResult&) = default;
};

struct RateStudyOptions {
    double c = 0.9;                     // constant in n = c * delta^(-...)
    Axis axis = Axis::t_axis;
    std::optional<double> gamma;        // default: midpoint of the admissible interval
    std::uint64_t first_seed = 1;
    NoiseMode mode = NoiseMode::rescaled;
    int grid_points = kDefaultCGridPoints;
};

/// For each delta: n = choose_n, gamma = choose_gamma, rescaled l_p noise on the
/// cross, truncation, both errors; medians over `seeds` runs, then the fitted
/// log-log slope in `metric`. delta_list must span at least three decades.
RateStudyResult rate_study(const TestFunction& fn, const SmoothnessParams& sp, int r, Metric metric,
                           std::span<const double> delta_list, int seeds, const RateStudyOptions& options = {});

struct NoiseFreeRow {
    int n = 0;
    double error_l2 = 0.0;
    double error_c = 0.0;
    std::size_t card = 0;
};

/// Truncation error with exact coefficients for each n.
std::vector<NoiseFreeRow> noise_free_errors(const TestFunction& fn, int r, double gamma,
                                            std::span<const int> n_list, Axis axis = Axis::t_axis,
                                            int grid_points = kDefaultCGridPoints);

/// Gauss nodes per panel that make the L2 error integral exact for an
/// approximation of degree n against fn.
int l2_quad_nodes(const TestFunction& fn, int n);

}  // namespace hcd
