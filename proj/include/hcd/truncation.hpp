#pragma once

// Hyperbolic-cross truncation: index sets, the truncated derivative operators
// for (r,0) and (0,r), the class norm and the a-priori choice of n and gamma.

#include <filesystem>
#include <span>
#include <vector>

#include "hcd/coeffs.hpp"
#include "hcd/legendre.hpp"
#include "hcd/params.hpp"

namespace hcd {

/// t_axis:   { (k, j) : r <= k <= n, k * j^gamma <= n }, j = 0 always admitted.
/// tau_axis: { (k, j) : r <= j <= n, k^gamma * j <= n }.
/// Indices are stored row-major (k ascending, then j ascending).
struct CrossSet {
    int n = 0;
    double gamma = 1.0;
    int r = 1;
    Axis axis = Axis::t_axis;
    std::vector<Index> indices;

    std::size_t size() const noexcept { return indices.size(); }
    bool empty() const noexcept { return indices.empty(); }
    bool contains(int k, int j) const;
    int max_k() const;
    int max_j() const;
};

/// Membership predicate shared by build_cross; products compared with a
/// relative slack of 1e-12 so that e.g. 2 * 2^1.5 <= 5.656854... is not lost to rounding.
bool in_cross(int n, double gamma, int r, Axis axis, int k, int j);

/// Throws std::invalid_argument for r < 1 or gamma < 1; returns an empty set if n < r.
CrossSet build_cross(int n, double gamma, int r, Axis axis = Axis::t_axis);

struct CardinalityRow {
    int n = 0;
    std::size_t card = 0;
};

std::vector<CardinalityRow> cardinality_growth(double gamma, int r, std::span<const int> n_list,
                                               Axis axis = Axis::t_axis);

/// max/min of a list of positive ratios.
double band_width(std::span<const double> ratios);

struct MethodParams {
    int n = 1;
    double gamma = 1.0;
    int r = 1;
    Axis axis = Axis::t_axis;
};

/// Truncated derivative in coefficient space: coeffs(l, j) for the t_axis
/// (l = 0..n) or coeffs(k, l) for the tau_axis. Evaluate with synthesize().
struct ApproxDerivative {
    CoeffGrid coeffs;
    MethodParams params;
    std::size_t cardinality = 0;
};

/// Keeps the coefficients on the cross and applies the order-r operator along
/// the derivative axis. Throws if the grid does not cover the cross or the
/// operator's order/degree does not fit.
ApproxDerivative truncate(const CoeffGrid& coeffs, const MethodParams& params,
                          const DerivOperator& deriv_op);
ApproxDerivative truncate(const CoeffGrid& coeffs, const MethodParams& params);

Grid2D synthesize(const ApproxDerivative& approx, std::span<const double> t_points,
                  std::span<const double> tau_points);

/// n = max(r, round(c * delta^(-1 / (mu - 1/p + 1/s)))), mu = mu1 for t_axis and
/// mu2 for tau_axis. Requires mu > 2r - 1/s + 1/2.
int choose_n(const SmoothnessParams& sp, int r, double c, Axis axis = Axis::t_axis);

struct GammaInterval {
    double upper = 1.0;
    bool closed = false;
};

/// Admissible gamma range [1, upper) or [1, upper] for the metric and s regime.
/// Throws std::invalid_argument when the class hypotheses fail or the range is empty.
GammaInterval gamma_interval(const SmoothnessParams& sp, int r, Metric metric, Axis axis = Axis::t_axis);

/// Midpoint of the admissible interval.
double choose_gamma(const SmoothnessParams& sp, int r, Metric metric, Axis axis = Axis::t_axis);

/// (sum max(1,k)^{s mu1} max(1,j)^{s mu2} |c(k,j)|^s)^{1/s}
double class_norm(const CoeffGrid& coeffs, double s, double mu1, double mu2);

/// Exponent of delta in the accuracy bound: (mu - 2r + 1/s - 1/2) / (mu - 1/p + 1/s)
/// for L2, with 3/2 in place of 1/2 for C.
double theoretical_rate(const SmoothnessParams& sp, int r, Metric metric, Axis axis = Axis::t_axis);

/// `k,j` listing of the cross.
void write_cross_csv(const CrossSet& cross, const std::filesystem::path& path);

}  // namespace hcd
