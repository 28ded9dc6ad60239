#include "hcd/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hcd/kernels.hpp"

namespace hcd {

namespace {

constexpr double kSlack = 1e-12;

// k * j^gamma <= n, the hyperbolic-cross inequality.
bool under_hyperbola(double a, double b_pow, int n) {
    return a * b_pow <= static_cast<double>(n) * (1.0 + kSlack);
}

void check_cross_args(int r, double gamma) {
    if (r < 1) throw std::invalid_argument("derivative order r must be >= 1");
    if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be a finite value >= 1");
}

void check_class_args(const SmoothnessParams& sp, int r) {
    if (r < 1) throw std::invalid_argument("derivative order r must be >= 1");
    if (!(sp.s >= 1.0) || !std::isfinite(sp.s)) throw std::invalid_argument("class parameter s must lie in [1, inf)");
    if (!(sp.mu1 > 0.0) || !(sp.mu2 > 0.0)) throw std::invalid_argument("smoothness mu1, mu2 must be > 0");
    if (!(sp.p >= 1.0)) throw std::invalid_argument("noise norm p must lie in [1, inf]");
}

// Smoothness along the derivative axis and across it.
std::pair<double, double> along_across(const SmoothnessParams& sp, Axis axis) {
    return axis == Axis::t_axis ? std::pair{sp.mu1, sp.mu2} : std::pair{sp.mu2, sp.mu1};
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

bool in_cross(int n, double gamma, int r, Axis axis, int k, int j) {
    if (k < 0 || j < 0) return false;
    if (axis == Axis::t_axis) {
        if (k < r || k > n) return false;
        return under_hyperbola(k, std::pow(static_cast<double>(j), gamma), n);
    }
    if (j < r || j > n) return false;
    return under_hyperbola(j, std::pow(static_cast<double>(k), gamma), n);
}

CrossSet build_cross(int n, double gamma, int r, Axis axis) {
    check_cross_args(r, gamma);
    CrossSet cross{n, gamma, r, axis, {}};
    if (n < r) return cross;

    // Largest m with outer * m^gamma <= n, starting from the floating estimate.
    auto limit = [&](int outer, auto pred) {
        int m = static_cast<int>(std::floor(std::pow(static_cast<double>(n) / outer, 1.0 / gamma)));
        while (pred(m + 1)) ++m;
        while (m > 0 && !pred(m)) --m;
        return m;
    };

    if (axis == Axis::t_axis) {
        for (int k = r; k <= n; ++k) {
            const int jmax = limit(k, [&](int j) { return in_cross(n, gamma, r, axis, k, j); });
            for (int j = 0; j <= jmax; ++j) cross.indices.push_back({k, j});
        }
    } else {
        // k = 0 is unrestricted by the hyperbola: j runs over r..n.
        const int kmax = limit(r, [&](int k) { return in_cross(n, gamma, r, axis, k, r); });
        for (int k = 0; k <= kmax; ++k)
            for (int j = r; j <= n && in_cross(n, gamma, r, axis, k, j); ++j) cross.indices.push_back({k, j});
    }
    return cross;
}

bool CrossSet::contains(int k, int j) const { return in_cross(n, gamma, r, axis, k, j); }

int CrossSet::max_k() const {
    int m = -1;
    for (const auto& idx : indices) m = std::max(m, idx.k);
    return m;
}

int CrossSet::max_j() const {
    int m = -1;
    for (const auto& idx : indices) m = std::max(m, idx.j);
    return m;
}

std::vector<CardinalityRow> cardinality_growth(double gamma, int r, std::span<const int> n_list, Axis axis) {
    std::vector<CardinalityRow> rows;
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (i > 0 && n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("cardinality_growth: n list must be strictly increasing");
        rows.push_back({n_list[i], build_cross(n_list[i], gamma, r, axis).size()});
    }
    return rows;
}

double band_width(std::span<const double> ratios) {
    if (ratios.empty()) return 1.0;
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    return *hi / *lo;
}

ApproxDerivative truncate(const CoeffGrid& coeffs, const MethodParams& params, const DerivOperator& deriv_op) {
    const CrossSet cross = build_cross(params.n, params.gamma, params.r, params.axis);
    ApproxDerivative out;
    out.params = params;
    out.cardinality = cross.size();
    out.coeffs.provenance = coeffs.provenance;
    if (cross.empty()) {
        out.coeffs.data = Grid2D(1, 1);
        return out;
    }
    if (deriv_op.order() != params.r)
        throw std::invalid_argument("truncate: operator order " + std::to_string(deriv_op.order()) +
                                    " does not match r = " + std::to_string(params.r));
    if (deriv_op.max_degree() < params.n)
        throw std::invalid_argument("truncate: operator degree below n");

    const int kmax = cross.max_k();
    const int jmax = cross.max_j();
    if (coeffs.K() < kmax || coeffs.J() < jmax)
        throw std::invalid_argument("truncate: coefficient grid " + std::to_string(coeffs.K() + 1) + "x" +
                                    std::to_string(coeffs.J() + 1) + " does not cover the cross for n = " +
                                    std::to_string(params.n));

    Grid2D kept(static_cast<std::size_t>(kmax) + 1, static_cast<std::size_t>(jmax) + 1);
    for (const auto& idx : cross.indices)
        kept(static_cast<std::size_t>(idx.k), static_cast<std::size_t>(idx.j)) = coeffs(idx.k, idx.j);

    // Block of the operator acting on degrees 0..n along the derivative axis.
    const auto size = static_cast<std::size_t>(params.n) + 1;
    if (params.axis == Axis::t_axis) {
        Grid2D block(size, static_cast<std::size_t>(kmax) + 1);
        for (std::size_t l = 0; l < size; ++l)
            for (std::size_t k = 0; k < block.cols(); ++k) block(l, k) = deriv_op.matrix()(l, k);
        out.coeffs.data = kernels::parallel::matmul(block, kept);
    } else {
        Grid2D block_t(static_cast<std::size_t>(jmax) + 1, size);
        for (std::size_t j = 0; j < block_t.rows(); ++j)
            for (std::size_t l = 0; l < size; ++l) block_t(j, l) = deriv_op.matrix()(l, j);
        out.coeffs.data = kernels::parallel::matmul(kept, block_t);
    }
    return out;
}

ApproxDerivative truncate(const CoeffGrid& coeffs, const MethodParams& params) {
    if (params.n < params.r) return truncate(coeffs, params, mueller_first_derivative(std::max(1, params.r)));
    return truncate(coeffs, params, derivative_operator(params.n, params.r));
}

Grid2D synthesize(const ApproxDerivative& approx, std::span<const double> t_points,
                  std::span<const double> tau_points) {
    return synthesize(approx.coeffs.data, t_points, tau_points);
}

int choose_n(const SmoothnessParams& sp, int r, double c, Axis axis) {
    check_class_args(sp, r);
    if (!(c > 0.0)) throw std::invalid_argument("choose_n: constant c must be > 0");
    if (!(sp.delta > 0.0 && sp.delta < 1.0)) throw std::invalid_argument("choose_n: delta must lie in (0, 1)");
    const double mu = along_across(sp, axis).first;
    const double inv_s = 1.0 / sp.s;
    if (!(mu > 2.0 * r - inv_s + 0.5))
        throw std::invalid_argument("choose_n: smoothness " + fmt(mu) + " must exceed 2r - 1/s + 1/2 = " +
                                    fmt(2.0 * r - inv_s + 0.5));
    const double exponent = 1.0 / (mu - reciprocal(sp.p) + inv_s);
    const double n = std::round(c * std::pow(sp.delta, -exponent));
    return std::max(r, static_cast<int>(n));
}

GammaInterval gamma_interval(const SmoothnessParams& sp, int r, Metric metric, Axis axis) {
    check_class_args(sp, r);
    const auto [mu_a, mu_b] = along_across(sp, axis);
    const double inv_s = 1.0 / sp.s;
    const double shift = metric == Metric::l2 ? 0.5 : 1.5;
    const double denom = mu_a - 2.0 * r + inv_s - shift;
    if (!(denom > 0.0))
        throw std::invalid_argument("smoothness " + fmt(mu_a) + " must exceed 2r - 1/s + " + fmt(shift) + " = " +
                                    fmt(2.0 * r - inv_s + shift) + " for the " + to_string(metric) + " metric");

    GammaInterval interval;
    if (metric == Metric::l2 && sp.s < 2.0) {
        interval.upper = mu_b / denom;
        interval.closed = true;
        if (!(interval.upper >= 1.0))
            throw std::invalid_argument("empty gamma interval: need mu_cross >= mu - 2r + 1/s - 1/2");
        return interval;
    }
    if (!(mu_b > mu_a - 2.0 * r))
        throw std::invalid_argument("empty gamma interval: need mu_cross > mu - 2r (" + fmt(mu_b) +
                                    " vs " + fmt(mu_a - 2.0 * r) + ")");
    interval.upper = (mu_b + inv_s - shift) / denom;
    interval.closed = false;
    return interval;
}

double choose_gamma(const SmoothnessParams& sp, int r, Metric metric, Axis axis) {
    return 0.5 * (1.0 + gamma_interval(sp, r, metric, axis).upper);
}

double class_norm(const CoeffGrid& coeffs, double s, double mu1, double mu2) {
    if (!(s >= 1.0)) throw std::invalid_argument("class_norm: s must be >= 1");
    double sum = 0.0;
    for (int k = 0; k <= coeffs.K(); ++k) {
        const double wk = std::pow(std::max(1, k), mu1);
        for (int j = 0; j <= coeffs.J(); ++j) {
            const double term = wk * std::pow(std::max(1, j), mu2) * std::abs(coeffs(k, j));
            sum += std::pow(term, s);
        }
    }
    return std::pow(sum, 1.0 / s);
}

double theoretical_rate(const SmoothnessParams& sp, int r, Metric metric, Axis axis) {
    const double mu = along_across(sp, axis).first;
    const double inv_s = 1.0 / sp.s;
    const double shift = metric == Metric::l2 ? 0.5 : 1.5;
    return (mu - 2.0 * r + inv_s - shift) / (mu - reciprocal(sp.p) + inv_s);
}

void write_cross_csv(const CrossSet& cross, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "k,j\n";
    for (const auto& idx : cross.indices) out << idx.k << ',' << idx.j << '\n';
}

}  // namespace hcd
