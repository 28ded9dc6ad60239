#pragma once

// Orthonormal Legendre basis on [-1,1], Gauss-Legendre quadrature and the
// coefficient-space differentiation operator.

#include <span>
#include <vector>

#include "hcd/grid.hpp"

namespace hcd {

/// phi_k(t) = sqrt(k + 1/2) P_k(t), the Legendre polynomial normalized in L2(-1,1).
double eval_phi(int k, double t);

/// Basis values phi_k(t_i) for k = 0..max_degree, stored as values(k, i).
struct BasisEval {
    int max_degree = 0;
    Grid2D values;
};

BasisEval evaluate_basis(int max_degree, std::span<const double> points);

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// m-point Gauss-Legendre rule on [-1,1]. Nodes strictly increasing.
QuadRule gauss_rule(int m);

/// Composite rule: an m-point Gauss rule on every panel of [-1,1] cut at the
/// given interior breakpoints. Used for integrands with a kink.
QuadRule composite_gauss_rule(int m, std::span<const double> breakpoints);

/// Uniform grid of step h on [-1,1] with composite trapezoid weights.
/// Throws std::invalid_argument unless 2/h is an integer (relative tolerance 1e-9)
/// and 0 < h <= 1.
QuadRule trapezoid_rule(double h);

/// Dense matrix M with (d^r/dt^r) sum_k c_k phi_k = sum_l (M c)_l phi_l.
/// Entry (l, k) is the weight of phi_l in the r-th derivative of phi_k.
class DerivOperator {
public:
    DerivOperator(int order, Grid2D matrix);

    int order() const noexcept { return order_; }
    int max_degree() const noexcept { return static_cast<int>(matrix_.rows()) - 1; }
    const Grid2D& matrix() const noexcept { return matrix_; }
    double operator()(int l, int k) const { return matrix_(l, k); }

    /// Coefficients of the r-th derivative of sum_k c_k phi_k. Input may be shorter
    /// than max_degree + 1; the output has the input's length.
    std::vector<double> apply(std::span<const double> coeffs) const;

private:
    int order_;
    Grid2D matrix_;
};

/// First-derivative operator: M(l,k) = 2 sqrt(k+1/2) sqrt(l+1/2) for l < k with k + l odd.
DerivOperator mueller_first_derivative(int max_degree);

/// r-fold composition of a first-order operator.
/// Throws std::overflow_error if any entry leaves the finite double range.
DerivOperator iterate_derivative(const DerivOperator& op1, int r);

/// Shorthand for iterate_derivative(mueller_first_derivative(max_degree), r).
DerivOperator derivative_operator(int max_degree, int r);

/// Values sum_{k,j} c(k,j) phi_k(t_i) phi_j(tau_m), returned as out(i, m).
Grid2D synthesize(const Grid2D& coeffs, std::span<const double> t_points,
                  std::span<const double> tau_points);

/// Value of a 1D Legendre series sum_k c_k phi_k(t) (Clenshaw-free forward recurrence).
double eval_series(std::span<const double> coeffs, double t);

}  // namespace hcd
