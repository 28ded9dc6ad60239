#pragma once

// Data-parallel inner loops. Every kernel exists twice with the same signature:
// `serial` is the plain reference used by the tests, `parallel` is the OpenMP
// build used by the library. Each output entry is produced by one fixed-order
// loop, so both variants return bit-identical results for any thread count.

#include <functional>
#include <span>
#include <vector>

#include "hcd/grid.hpp"

namespace hcd::kernels {

using Sampler = std::function<double(double, double)>;

namespace serial {

/// table(k, i) = phi_k(points[i])
Grid2D basis_table(int max_degree, std::span<const double> points);

/// out(i, m) = sum_{k,j} phi_t(k, i) coeffs(k, j) phi_tau(j, m)
Grid2D synthesize(const Grid2D& coeffs, const Grid2D& phi_t, const Grid2D& phi_tau);

/// c(k, j) = sum_{a,b} wt[a] wtau[b] f(t[a], tau[b]) phi_t(k, a) phi_tau(j, b)
Grid2D project(const Sampler& f, std::span<const double> t_nodes,
               std::span<const double> t_weights, const Grid2D& phi_t,
               std::span<const double> tau_nodes, std::span<const double> tau_weights,
               const Grid2D& phi_tau);

/// c[k] = sum_a w[a] values[a] phi(k, a)
std::vector<double> project_1d(std::span<const double> values, std::span<const double> weights,
                               const Grid2D& phi);

Grid2D matmul(const Grid2D& lhs, const Grid2D& rhs);

/// sum_{i,m} wt[i] wtau[m] (a(i,m) - b(i,m))^2
double weighted_sq_diff(const Grid2D& a, const Grid2D& b, std::span<const double> wt,
                        std::span<const double> wtau);

double max_abs_diff(const Grid2D& a, const Grid2D& b);

/// out(i, m) = f(t[i], tau[m])
Grid2D sample(const Sampler& f, std::span<const double> t, std::span<const double> tau);

}  // namespace serial

namespace parallel {

Grid2D basis_table(int max_degree, std::span<const double> points);
Grid2D synthesize(const Grid2D& coeffs, const Grid2D& phi_t, const Grid2D& phi_tau);
Grid2D project(const Sampler& f, std::span<const double> t_nodes,
               std::span<const double> t_weights, const Grid2D& phi_t,
               std::span<const double> tau_nodes, std::span<const double> tau_weights,
               const Grid2D& phi_tau);
std::vector<double> project_1d(std::span<const double> values, std::span<const double> weights,
                               const Grid2D& phi);
Grid2D matmul(const Grid2D& lhs, const Grid2D& rhs);
double weighted_sq_diff(const Grid2D& a, const Grid2D& b, std::span<const double> wt,
                        std::span<const double> wtau);
double max_abs_diff(const Grid2D& a, const Grid2D& b);
Grid2D sample(const Sampler& f, std::span<const double> t, std::span<const double> tau);

}  // namespace parallel

/// Threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace hcd::kernels
