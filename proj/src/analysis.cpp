#include "hcd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hcd/kernels.hpp"

namespace hcd {

ErrorEvaluator::ErrorEvaluator(Surface exact, int quad_nodes, int grid_points, std::vector<double> breaks_t,
                               std::vector<double> breaks_tau)
    : quad_nodes_(quad_nodes),
      rule_t_(composite_gauss_rule(quad_nodes, breaks_t)),
      rule_tau_(composite_gauss_rule(quad_nodes, breaks_tau)),
      uniform_(uniform_points(grid_points)) {
    exact_gauss_ = kernels::parallel::sample(exact, rule_t_.nodes, rule_tau_.nodes);
    exact_uniform_ = kernels::parallel::sample(exact, uniform_, uniform_);
}

namespace {

Grid2D outer_sample(const TestFunction& fn, int r, Axis axis, std::span<const double> t,
                    std::span<const double> tau) {
    const int order_t = axis == Axis::t_axis ? r : 0;
    const int order_tau = axis == Axis::tau_axis ? r : 0;
    std::vector<double> a(t.size()), b(tau.size());
    for (std::size_t i = 0; i < t.size(); ++i) a[i] = fn.factor_t().derivative(order_t, t[i]);
    for (std::size_t m = 0; m < tau.size(); ++m) b[m] = fn.factor_tau().derivative(order_tau, tau[m]);
    Grid2D out(t.size(), tau.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t m = 0; m < tau.size(); ++m) out(i, m) = a[i] * b[m] / fn.normalization();
    return out;
}

}  // namespace

ErrorEvaluator::ErrorEvaluator(const TestFunction& fn, int r, Axis axis, int quad_nodes, int grid_points)
    : quad_nodes_(quad_nodes),
      rule_t_(composite_gauss_rule(quad_nodes, fn.breakpoints_t())),
      rule_tau_(composite_gauss_rule(quad_nodes, fn.breakpoints_tau())),
      uniform_(uniform_points(grid_points)) {
    exact_gauss_ = outer_sample(fn, r, axis, rule_t_.nodes, rule_tau_.nodes);
    exact_uniform_ = outer_sample(fn, r, axis, uniform_, uniform_);
}

double ErrorEvaluator::l2(const Grid2D& coeffs) const {
    const auto degree = static_cast<int>(std::max(coeffs.rows(), coeffs.cols())) - 1;
    if (quad_nodes_ < degree + 32)
        throw std::invalid_argument("l2 error: quad_nodes must be >= degree + 32 = " + std::to_string(degree + 32));
    const Grid2D approx = synthesize(coeffs, rule_t_.nodes, rule_tau_.nodes);
    return std::sqrt(kernels::parallel::weighted_sq_diff(approx, exact_gauss_, rule_t_.weights, rule_tau_.weights));
}

double ErrorEvaluator::c(const Grid2D& coeffs) const {
    const Grid2D approx = synthesize(coeffs, uniform_, uniform_);
    return kernels::parallel::max_abs_diff(approx, exact_uniform_);
}

double ErrorEvaluator::l2(const ApproxDerivative& approx) const { return l2(approx.coeffs.data); }
double ErrorEvaluator::c(const ApproxDerivative& approx) const { return c(approx.coeffs.data); }

double l2_error(const ApproxDerivative& approx, const Surface& exact, int quad_nodes) {
    // The grid points are irrelevant here; keep the uniform sample minimal.
    const ErrorEvaluator eval(exact, quad_nodes, 2);
    return eval.l2(approx);
}

double c_error(const ApproxDerivative& approx, const Surface& exact, int grid_points) {
    if (grid_points < 257) throw std::invalid_argument("c_error: need at least 257 grid points per axis");
    const ErrorEvaluator eval(exact, 1, grid_points);
    return eval.c(approx);
}

std::vector<double> uniform_points(int count) {
    if (count < 2) throw std::invalid_argument("uniform grid needs at least 2 points");
    std::vector<double> pts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pts[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (count - 1);
    pts.back() = 1.0;
    return pts;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs >= 2 paired points");
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("slope fit needs positive data");
        sx += std::log(x[i]);
        sy += std::log(y[i]);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[i]) - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct x values");
    return sxy / sxx;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of empty list");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

int l2_quad_nodes(const TestFunction& fn, int n) { return std::max(n, fn.series_degree()) + 32; }

namespace {

CoeffGrid coefficients_for(const TestFunction& fn, const CrossSet& cross) {
    return exact_coeffs(fn, std::max(cross.max_k(), 0), std::max(cross.max_j(), 0));
}

ErrorEvaluator evaluator_for(const TestFunction& fn, int r, Axis axis, int n, int grid_points) {
    return ErrorEvaluator(fn, r, axis, l2_quad_nodes(fn, n), grid_points);
}

}  // namespace

RateStudyResult rate_study(const TestFunction& fn, const SmoothnessParams& sp, int r, Metric metric,
                           std::span<const double> delta_list, int seeds, const RateStudyOptions& options) {
    if (seeds < 1) throw std::invalid_argument("rate_study: need at least one seed");
    if (delta_list.size() < 2) throw std::invalid_argument("rate_study: need at least two noise levels");
    const auto [lo, hi] = std::minmax_element(delta_list.begin(), delta_list.end());
    if (*hi / *lo < 1e3 * (1.0 - 1e-9))
        throw std::invalid_argument("rate_study: noise levels must span at least three decades");

    RateStudyResult result;
    result.metric = metric;
    result.theoretical_slope = theoretical_rate(sp, r, metric, options.axis);

    for (double delta : delta_list) {
        SmoothnessParams at = sp;
        at.delta = delta;
        const int n = choose_n(at, r, options.c, options.axis);
        const double gamma = options.gamma ? *options.gamma : choose_gamma(at, r, metric, options.axis);
        const MethodParams params{n, gamma, r, options.axis};
        const CrossSet cross = build_cross(n, gamma, r, options.axis);
        const CoeffGrid exact = coefficients_for(fn, cross);
        const DerivOperator op = derivative_operator(std::max(n, 1), r);
        const ErrorEvaluator eval = evaluator_for(fn, r, options.axis, n, options.grid_points);

        std::vector<double> errs;
        for (int s = 0; s < seeds; ++s) {
            const std::uint64_t seed = options.first_seed + static_cast<std::uint64_t>(s);
            const NoiseSpec noise{delta, sp.p, options.mode, seed};
            const ApproxDerivative approx = truncate(add_noise(exact, noise, cross.indices), params, op);
            RateTrial trial{delta, n, gamma, seed, eval.l2(approx), eval.c(approx), cross.size()};
            errs.push_back(metric == Metric::l2 ? trial.error_l2 : trial.error_c);
            result.trials.push_back(trial);
        }
        result.deltas.push_back(delta);
        result.errors.push_back(median(errs));
    }
    result.fitted_slope = fit_loglog_slope(result.deltas, result.errors);
    return result;
}

std::vector<NoiseFreeRow> noise_free_errors(const TestFunction& fn, int r, double gamma, std::span<const int> n_list,
                                            Axis axis, int grid_points) {
    std::vector<NoiseFreeRow> rows;
    for (int n : n_list) {
        const CrossSet cross = build_cross(n, gamma, r, axis);
        const CoeffGrid exact = coefficients_for(fn, cross);
        const ApproxDerivative approx = truncate(exact, MethodParams{n, gamma, r, axis});
        const ErrorEvaluator eval = evaluator_for(fn, r, axis, n, grid_points);
        rows.push_back({n, eval.l2(approx), eval.c(approx), cross.size()});
    }
    return rows;
}

}  // namespace hcd
