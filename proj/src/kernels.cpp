#include "hcd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hcd::kernels {

namespace {

// Fills column i of the basis table: unnormalized three-term recurrence, then
// one scaling by sqrt(k + 1/2).
inline void basis_column(Grid2D& table, int max_degree, std::size_t i, double t) {
    double p_prev = 1.0;
    table(0, i) = p_prev;
    if (max_degree >= 1) {
        double p = t;
        table(1, i) = p;
        for (int k = 1; k < max_degree; ++k) {
            const double next = ((2.0 * k + 1.0) * t * p - k * p_prev) / (k + 1.0);
            p_prev = p;
            p = next;
            table(k + 1, i) = p;
        }
    }
    for (int k = 0; k <= max_degree; ++k) table(k, i) *= std::sqrt(k + 0.5);
}

inline void check_synth_shapes(const Grid2D& coeffs, const Grid2D& phi_t, const Grid2D& phi_tau) {
    if (coeffs.rows() > phi_t.rows() || coeffs.cols() > phi_tau.rows())
        throw std::invalid_argument("synthesize: basis tables do not cover the coefficient grid");
}

// T(k, m) = sum_j coeffs(k, j) phi_tau(j, m) for one k.
inline void contract_tau_row(const Grid2D& coeffs, const Grid2D& phi_tau, Grid2D& tmp,
                             std::size_t k) {
    auto out = tmp.row(k);
    for (std::size_t j = 0; j < coeffs.cols(); ++j) {
        const double c = coeffs(k, j);
        if (c == 0.0) continue;
        auto basis = phi_tau.row(j);
        for (std::size_t m = 0; m < out.size(); ++m) out[m] += c * basis[m];
    }
}

// out(i, m) = sum_k phi_t(k, i) tmp(k, m) for one i.
inline void contract_t_row(const Grid2D& tmp, const Grid2D& phi_t, Grid2D& out, std::size_t i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < tmp.rows(); ++k) {
        const double a = phi_t(k, i);
        auto src = tmp.row(k);
        for (std::size_t m = 0; m < dst.size(); ++m) dst[m] += a * src[m];
    }
}

// V(a, j) = sum_b wtau[b] f(t_a, tau_b) phi_tau(j, b) for one a.
inline void project_stage1_row(const Sampler& f, double t, std::span<const double> tau_nodes,
                               std::span<const double> tau_weights, const Grid2D& phi_tau,
                               std::vector<double>& buf, Grid2D& v, std::size_t a) {
    for (std::size_t b = 0; b < tau_nodes.size(); ++b) buf[b] = tau_weights[b] * f(t, tau_nodes[b]);
    for (std::size_t j = 0; j < v.cols(); ++j) {
        auto basis = phi_tau.row(j);
        double s = 0.0;
        for (std::size_t b = 0; b < buf.size(); ++b) s += buf[b] * basis[b];
        v(a, j) = s;
    }
}

// c(k, j) = sum_a wt[a] phi_t(k, a) V(a, j) for one k.
inline void project_stage2_row(const Grid2D& v, std::span<const double> t_weights,
                               const Grid2D& phi_t, Grid2D& c, std::size_t k) {
    auto dst = c.row(k);
    for (std::size_t a = 0; a < v.rows(); ++a) {
        const double s = t_weights[a] * phi_t(k, a);
        auto src = v.row(a);
        for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += s * src[j];
    }
}

inline void check_project_shapes(std::span<const double> t_nodes, std::span<const double> t_weights,
                                 const Grid2D& phi_t, std::span<const double> tau_nodes,
                                 std::span<const double> tau_weights, const Grid2D& phi_tau) {
    if (t_nodes.size() != t_weights.size() || phi_t.cols() != t_nodes.size() ||
        tau_nodes.size() != tau_weights.size() || phi_tau.cols() != tau_nodes.size())
        throw std::invalid_argument("project: node, weight and basis sizes disagree");
}

inline double row_weighted_sq_diff(const Grid2D& a, const Grid2D& b, std::span<const double> wtau,
                                   std::size_t i) {
    double s = 0.0;
    for (std::size_t m = 0; m < a.cols(); ++m) {
        const double d = a(i, m) - b(i, m);
        s += wtau[m] * d * d;
    }
    return s;
}

inline void check_same_shape(const Grid2D& a, const Grid2D& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("grid shapes differ");
}

inline void matmul_row(const Grid2D& lhs, const Grid2D& rhs, Grid2D& out, std::size_t i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
        const double a = lhs(i, k);
        if (a == 0.0) continue;
        auto src = rhs.row(k);
        for (std::size_t m = 0; m < dst.size(); ++m) dst[m] += a * src[m];
    }
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// ---------------------------------------------------------------------------
// Serial reference

namespace serial {

Grid2D basis_table(int max_degree, std::span<const double> points) {
    if (max_degree < 0) throw std::invalid_argument("basis_table: negative degree");
    Grid2D table(static_cast<std::size_t>(max_degree) + 1, points.size());
    for (std::size_t i = 0; i < points.size(); ++i) basis_column(table, max_degree, i, points[i]);
    return table;
}

Grid2D synthesize(const Grid2D& coeffs, const Grid2D& phi_t, const Grid2D& phi_tau) {
    check_synth_shapes(coeffs, phi_t, phi_tau);
    Grid2D tmp(coeffs.rows(), phi_tau.cols());
    for (std::size_t k = 0; k < coeffs.rows(); ++k) contract_tau_row(coeffs, phi_tau, tmp, k);
    Grid2D out(phi_t.cols(), phi_tau.cols());
    for (std::size_t i = 0; i < out.rows(); ++i) contract_t_row(tmp, phi_t, out, i);
    return out;
}

Grid2D project(const Sampler& f, std::span<const double> t_nodes,
               std::span<const double> t_weights, const Grid2D& phi_t,
               std::span<const double> tau_nodes, std::span<const double> tau_weights,
               const Grid2D& phi_tau) {
    check_project_shapes(t_nodes, t_weights, phi_t, tau_nodes, tau_weights, phi_tau);
    Grid2D v(t_nodes.size(), phi_tau.rows());
    std::vector<double> buf(tau_nodes.size());
    for (std::size_t a = 0; a < t_nodes.size(); ++a)
        project_stage1_row(f, t_nodes[a], tau_nodes, tau_weights, phi_tau, buf, v, a);
    Grid2D c(phi_t.rows(), phi_tau.rows());
    for (std::size_t k = 0; k < c.rows(); ++k) project_stage2_row(v, t_weights, phi_t, c, k);
    return c;
}

std::vector<double> project_1d(std::span<const double> values, std::span<const double> weights,
                               const Grid2D& phi) {
    std::vector<double> c(phi.rows(), 0.0);
    for (std::size_t k = 0; k < phi.rows(); ++k) {
        double s = 0.0;
        for (std::size_t a = 0; a < values.size(); ++a) s += weights[a] * values[a] * phi(k, a);
        c[k] = s;
    }
    return c;
}

Grid2D matmul(const Grid2D& lhs, const Grid2D& rhs) {
    if (lhs.cols() != rhs.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
    Grid2D out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) matmul_row(lhs, rhs, out, i);
    return out;
}

double weighted_sq_diff(const Grid2D& a, const Grid2D& b, std::span<const double> wt,
                        std::span<const double> wtau) {
    check_same_shape(a, b);
    double total = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) total += wt[i] * row_weighted_sq_diff(a, b, wtau, i);
    return total;
}

double max_abs_diff(const Grid2D& a, const Grid2D& b) {
    check_same_shape(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.flat()[i] - b.flat()[i]));
    return m;
}

Grid2D sample(const Sampler& f, std::span<const double> t, std::span<const double> tau) {
    Grid2D out(t.size(), tau.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t m = 0; m < tau.size(); ++m) out(i, m) = f(t[i], tau[m]);
    return out;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP

namespace parallel {

Grid2D basis_table(int max_degree, std::span<const double> points) {
    if (max_degree < 0) throw std::invalid_argument("basis_table: negative degree");
    Grid2D table(static_cast<std::size_t>(max_degree) + 1, points.size());
    const auto npts = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < npts; ++i)
        basis_column(table, max_degree, static_cast<std::size_t>(i), points[i]);
    return table;
}

Grid2D synthesize(const Grid2D& coeffs, const Grid2D& phi_t, const Grid2D& phi_tau) {
    check_synth_shapes(coeffs, phi_t, phi_tau);
    Grid2D tmp(coeffs.rows(), phi_tau.cols());
    const auto nk = static_cast<std::ptrdiff_t>(coeffs.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < nk; ++k)
        contract_tau_row(coeffs, phi_tau, tmp, static_cast<std::size_t>(k));
    Grid2D out(phi_t.cols(), phi_tau.cols());
    const auto ni = static_cast<std::ptrdiff_t>(out.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < ni; ++i)
        contract_t_row(tmp, phi_t, out, static_cast<std::size_t>(i));
    return out;
}

Grid2D project(const Sampler& f, std::span<const double> t_nodes,
               std::span<const double> t_weights, const Grid2D& phi_t,
               std::span<const double> tau_nodes, std::span<const double> tau_weights,
               const Grid2D& phi_tau) {
    check_project_shapes(t_nodes, t_weights, phi_t, tau_nodes, tau_weights, phi_tau);
    Grid2D v(t_nodes.size(), phi_tau.rows());
    const auto na = static_cast<std::ptrdiff_t>(t_nodes.size());
#pragma omp parallel
    {
        std::vector<double> buf(tau_nodes.size());
#pragma omp for schedule(static)
        for (std::ptrdiff_t a = 0; a < na; ++a)
            project_stage1_row(f, t_nodes[a], tau_nodes, tau_weights, phi_tau, buf, v,
                               static_cast<std::size_t>(a));
    }
    Grid2D c(phi_t.rows(), phi_tau.rows());
    const auto nk = static_cast<std::ptrdiff_t>(c.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < nk; ++k)
        project_stage2_row(v, t_weights, phi_t, c, static_cast<std::size_t>(k));
    return c;
}

std::vector<double> project_1d(std::span<const double> values, std::span<const double> weights,
                               const Grid2D& phi) {
    std::vector<double> c(phi.rows(), 0.0);
    const auto nk = static_cast<std::ptrdiff_t>(phi.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < nk; ++k) {
        double s = 0.0;
        for (std::size_t a = 0; a < values.size(); ++a)
            s += weights[a] * values[a] * phi(static_cast<std::size_t>(k), a);
        c[static_cast<std::size_t>(k)] = s;
    }
    return c;
}

Grid2D matmul(const Grid2D& lhs, const Grid2D& rhs) {
    if (lhs.cols() != rhs.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
    Grid2D out(lhs.rows(), rhs.cols());
    const auto ni = static_cast<std::ptrdiff_t>(lhs.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < ni; ++i) matmul_row(lhs, rhs, out, static_cast<std::size_t>(i));
    return out;
}

double weighted_sq_diff(const Grid2D& a, const Grid2D& b, std::span<const double> wt,
                        std::span<const double> wtau) {
    check_same_shape(a, b);
    // Row partials first, then an ordered sum: result independent of thread count.
    std::vector<double> partial(a.rows());
    const auto ni = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < ni; ++i)
        partial[static_cast<std::size_t>(i)] = row_weighted_sq_diff(a, b, wtau, static_cast<std::size_t>(i));
    double total = 0.0;
    for (std::size_t i = 0; i < partial.size(); ++i) total += wt[i] * partial[i];
    return total;
}

double max_abs_diff(const Grid2D& a, const Grid2D& b) {
    check_same_shape(a, b);
    double m = 0.0;
    const auto n = static_cast<std::ptrdiff_t>(a.size());
    const auto fa = a.flat();
    const auto fb = b.flat();
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(fa[i] - fb[i]));
    return m;
}

Grid2D sample(const Sampler& f, std::span<const double> t, std::span<const double> tau) {
    Grid2D out(t.size(), tau.size());
    const auto ni = static_cast<std::ptrdiff_t>(t.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < ni; ++i)
        for (std::size_t m = 0; m < tau.size(); ++m)
            out(static_cast<std::size_t>(i), m) = f(t[i], tau[m]);
    return out;
}

}  // namespace parallel

}  // namespace hcd::kernels
