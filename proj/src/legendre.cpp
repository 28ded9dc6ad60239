#include "hcd/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hcd/kernels.hpp"

namespace hcd {

double eval_phi(int k, double t) {
    if (k < 0) throw std::invalid_argument("eval_phi: negative degree");
    double p_prev = 1.0;
    double p = t;
    if (k == 0) return std::sqrt(0.5);
    for (int i = 1; i < k; ++i) {
        const double next = ((2.0 * i + 1.0) * t * p - i * p_prev) / (i + 1.0);
        p_prev = p;
        p = next;
    }
    return std::sqrt(k + 0.5) * p;
}

double eval_series(std::span<const double> coeffs, double t) {
    if (coeffs.empty()) return 0.0;
    double p_prev = 1.0;
    double p = t;
    double sum = coeffs[0] * std::sqrt(0.5);
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        if (k > 1) {
            const double i = static_cast<double>(k - 1);
            const double next = ((2.0 * i + 1.0) * t * p - i * p_prev) / (i + 1.0);
            p_prev = p;
            p = next;
        }
        sum += coeffs[k] * std::sqrt(static_cast<double>(k) + 0.5) * p;
    }
    return sum;
}

BasisEval evaluate_basis(int max_degree, std::span<const double> points) {
    return BasisEval{max_degree, kernels::parallel::basis_table(max_degree, points)};
}

QuadRule gauss_rule(int m) {
    if (m < 1) throw std::invalid_argument("gauss_rule: need at least one node");
    QuadRule rule;
    rule.nodes.resize(static_cast<std::size_t>(m));
    rule.weights.resize(static_cast<std::size_t>(m));
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-type initial guess for the i-th largest root, then Newton on P_m.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 1; k < m; ++k) {
                const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            if (m == 1) p0 = 1.0;
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-14) break;
        }
        // One more derivative evaluation at the converged root for the weight.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 1; k < m; ++k) {
            const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
            p0 = p1;
            p1 = p2;
        }
        dp = (m == 1) ? 1.0 : m * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(m - 1 - i);
        rule.nodes[hi] = x;
        rule.nodes[lo] = -x;
        rule.weights[hi] = w;
        rule.weights[lo] = w;
    }
    if (m % 2 == 1) rule.nodes[static_cast<std::size_t>(m / 2)] = 0.0;
    return rule;
}

QuadRule composite_gauss_rule(int m, std::span<const double> breakpoints) {
    std::vector<double> cuts{-1.0};
    for (double b : breakpoints)
        if (b > -1.0 && b < 1.0) cuts.push_back(b);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const QuadRule base = gauss_rule(m);
    QuadRule rule;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double mid = 0.5 * (cuts[p] + cuts[p + 1]);
        const double half = 0.5 * (cuts[p + 1] - cuts[p]);
        for (std::size_t i = 0; i < base.nodes.size(); ++i) {
            rule.nodes.push_back(mid + half * base.nodes[i]);
            rule.weights.push_back(half * base.weights[i]);
        }
    }
    return rule;
}

QuadRule trapezoid_rule(double h) {
    if (!(h > 0.0) || h > 1.0)
        throw std::invalid_argument("trapezoid step h must lie in (0, 1], got " + std::to_string(h));
    const double steps = 2.0 / h;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 * rounded)
        throw std::invalid_argument("trapezoid step h must divide 2 into an integer number of steps");
    const auto n = static_cast<std::size_t>(rounded);
    const double step = 2.0 / static_cast<double>(n);
    QuadRule rule;
    rule.nodes.resize(n + 1);
    rule.weights.assign(n + 1, step);
    for (std::size_t a = 0; a <= n; ++a)
        rule.nodes[a] = -1.0 + 2.0 * static_cast<double>(a) / static_cast<double>(n);
    rule.nodes[n] = 1.0;
    rule.weights.front() = 0.5 * step;
    rule.weights.back() = 0.5 * step;
    return rule;
}

DerivOperator::DerivOperator(int order, Grid2D matrix) : order_(order), matrix_(std::move(matrix)) {
    if (order_ < 1) throw std::invalid_argument("DerivOperator: order must be >= 1");
    if (matrix_.rows() != matrix_.cols() || matrix_.empty())
        throw std::invalid_argument("DerivOperator: matrix must be square and non-empty");
}

std::vector<double> DerivOperator::apply(std::span<const double> coeffs) const {
    if (coeffs.size() > matrix_.rows())
        throw std::invalid_argument("DerivOperator::apply: input longer than operator degree");
    std::vector<double> out(coeffs.size(), 0.0);
    for (std::size_t l = 0; l < coeffs.size(); ++l) {
        double s = 0.0;
        for (std::size_t k = l + 1; k < coeffs.size(); ++k) s += matrix_(l, k) * coeffs[k];
        out[l] = s;
    }
    return out;
}

DerivOperator mueller_first_derivative(int max_degree) {
    if (max_degree < 1) throw std::invalid_argument("mueller_first_derivative: max_degree must be >= 1");
    const auto size = static_cast<std::size_t>(max_degree) + 1;
    Grid2D m(size, size);
    for (std::size_t k = 1; k < size; ++k) {
        const double sk = std::sqrt(static_cast<double>(k) + 0.5);
        // l runs over k-1, k-3, ... so that k + l is odd.
        for (std::size_t l = k - 1;; l -= 2) {
            m(l, k) = 2.0 * sk * std::sqrt(static_cast<double>(l) + 0.5);
            if (l < 2) break;
        }
    }
    return DerivOperator(1, std::move(m));
}

DerivOperator iterate_derivative(const DerivOperator& op1, int r) {
    if (op1.order() != 1) throw std::invalid_argument("iterate_derivative: base operator must be first order");
    if (r < 1) throw std::invalid_argument("iterate_derivative: r must be >= 1");
    Grid2D acc = op1.matrix();
    for (int i = 1; i < r; ++i) acc = kernels::parallel::matmul(op1.matrix(), acc);
    for (double v : acc.flat())
        if (!std::isfinite(v))
            throw std::overflow_error("iterate_derivative: entries overflow for r = " + std::to_string(r) +
                                      ", max_degree = " + std::to_string(op1.max_degree()));
    return DerivOperator(r, std::move(acc));
}

DerivOperator derivative_operator(int max_degree, int r) {
    return iterate_derivative(mueller_first_derivative(max_degree), r);
}

Grid2D synthesize(const Grid2D& coeffs, std::span<const double> t_points,
                  std::span<const double> tau_points) {
    if (coeffs.empty()) return Grid2D(t_points.size(), tau_points.size());
    const Grid2D phi_t =
        kernels::parallel::basis_table(static_cast<int>(coeffs.rows()) - 1, t_points);
    const Grid2D phi_tau =
        kernels::parallel::basis_table(static_cast<int>(coeffs.cols()) - 1, tau_points);
    return kernels::parallel::synthesize(coeffs, phi_t, phi_tau);
}

}  // namespace hcd
