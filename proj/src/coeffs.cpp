#include "hcd/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hcd/kernels.hpp"
#include "hcd/legendre.hpp"

namespace hcd {

std::string to_string(Source source) {
    switch (source) {
        case Source::exact: return "exact";
        case Source::trapezoid: return "trapezoid";
        case Source::noisy: return "noisy";
    }
    return "exact";
}

std::string to_string(NoiseMode mode) {
    return mode == NoiseMode::rescaled ? "rescaled" : "raw_gaussian";
}

Source parse_source(const std::string& text) {
    if (text == "exact") return Source::exact;
    if (text == "trapezoid") return Source::trapezoid;
    if (text == "noisy") return Source::noisy;
    throw std::invalid_argument("unknown provenance '" + text + "'");
}

NoiseMode parse_noise_mode(const std::string& text) {
    if (text == "rescaled") return NoiseMode::rescaled;
    if (text == "raw_gaussian" || text == "raw") return NoiseMode::raw_gaussian;
    throw std::invalid_argument("unknown noise mode '" + text + "' (expected rescaled or raw_gaussian)");
}

namespace {

void check_degrees(int K, int J) {
    if (K < 0 || J < 0) throw std::invalid_argument("coefficient grid degrees must be >= 0");
}

std::vector<double> sample_factor(const Factor& f, std::span<const double> nodes) {
    std::vector<double> v(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = f(nodes[i]);
    return v;
}

// Outer product of two 1D projections: the factorized form of a tensor rule
// applied to a separable integrand.
Grid2D separable_projection(const TestFunction& f, int K, int J, const QuadRule& rule_t,
                            const QuadRule& rule_tau) {
    const Grid2D phi_t = kernels::parallel::basis_table(K, rule_t.nodes);
    const Grid2D phi_tau = kernels::parallel::basis_table(J, rule_tau.nodes);
    const auto a = kernels::parallel::project_1d(sample_factor(f.factor_t(), rule_t.nodes),
                                                 rule_t.weights, phi_t);
    const auto b = kernels::parallel::project_1d(sample_factor(f.factor_tau(), rule_tau.nodes),
                                                 rule_tau.weights, phi_tau);
    Grid2D out(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t j = 0; j < b.size(); ++j) out(k, j) = a[k] * b[j] / f.normalization();
    return out;
}

Grid2D generic_projection(const Surface& f, int K, int J, const QuadRule& rule_t,
                          const QuadRule& rule_tau) {
    const Grid2D phi_t = kernels::parallel::basis_table(K, rule_t.nodes);
    const Grid2D phi_tau = kernels::parallel::basis_table(J, rule_tau.nodes);
    return kernels::parallel::project(f, rule_t.nodes, rule_t.weights, phi_t, rule_tau.nodes,
                                      rule_tau.weights, phi_tau);
}

}  // namespace

CoeffGrid exact_coeffs(const TestFunction& f, int K, int J, int quad_nodes) {
    check_degrees(K, J);
    if (quad_nodes < std::max(K, J) + 32)
        throw std::invalid_argument("exact_coeffs: quad_nodes must be >= max(K, J) + 32");
    const QuadRule rule_t = composite_gauss_rule(quad_nodes, f.breakpoints_t());
    const QuadRule rule_tau = composite_gauss_rule(quad_nodes, f.breakpoints_tau());
    return CoeffGrid(separable_projection(f, K, J, rule_t, rule_tau), Provenance{});
}

CoeffGrid exact_coeffs(const TestFunction& f, int K, int J) {
    check_degrees(K, J);
    return exact_coeffs(f, K, J, std::max({K, J, f.series_degree()}) + 32);
}

CoeffGrid trapezoid_coeffs(const TestFunction& f, int K, int J, double h, bool force_generic) {
    check_degrees(K, J);
    const QuadRule rule = trapezoid_rule(h);
    Provenance prov;
    prov.source = Source::trapezoid;
    prov.base = Source::trapezoid;
    prov.h = h;
    if (force_generic) return CoeffGrid(generic_projection(f.surface(), K, J, rule, rule), prov);
    return CoeffGrid(separable_projection(f, K, J, rule, rule), prov);
}

CoeffGrid trapezoid_coeffs(const Surface& f, int K, int J, double h) {
    check_degrees(K, J);
    const QuadRule rule = trapezoid_rule(h);
    Provenance prov;
    prov.source = Source::trapezoid;
    prov.base = Source::trapezoid;
    prov.h = h;
    return CoeffGrid(generic_projection(f, K, J, rule, rule), prov);
}

std::vector<double> draw_noise(const NoiseSpec& spec, std::size_t count) {
    if (!(spec.delta > 0.0 && spec.delta < 1.0))
        throw std::invalid_argument("noise level delta must lie in (0, 1)");
    if (!(spec.p >= 1.0)) throw std::invalid_argument("noise norm p must be >= 1");

    // One sequential stream per grid: the draw does not depend on thread count.
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> xi(count);
    for (auto& x : xi) x = gauss(rng);

    if (spec.mode == NoiseMode::raw_gaussian) {
        for (auto& x : xi) x *= spec.delta;
        return xi;
    }
    const double norm = lp_norm(xi, spec.p);
    if (norm == 0.0) return xi;
    const double scale = spec.delta / norm;
    for (auto& x : xi) x *= scale;
    if (spec.p == kInfinity) {
        // Put the largest entry exactly on the boundary of the delta-ball.
        auto it = std::max_element(xi.begin(), xi.end(),
                                   [](double a, double b) { return std::abs(a) < std::abs(b); });
        *it = std::copysign(spec.delta, *it);
    }
    return xi;
}

CoeffGrid add_noise(const CoeffGrid& grid, const NoiseSpec& spec, std::span<const Index> support) {
    for (const auto& idx : support)
        if (idx.k < 0 || idx.j < 0 || idx.k > grid.K() || idx.j > grid.J())
            throw std::invalid_argument("add_noise: support index outside the coefficient grid");
    const auto xi = draw_noise(spec, support.size());
    CoeffGrid out = grid;
    for (std::size_t i = 0; i < support.size(); ++i) out(support[i].k, support[i].j) += xi[i];
    out.provenance.base = grid.provenance.source == Source::noisy ? grid.provenance.base
                                                                  : grid.provenance.source;
    out.provenance.source = Source::noisy;
    out.provenance.delta = spec.delta;
    out.provenance.p = spec.p;
    out.provenance.seed = spec.seed;
    out.provenance.mode = spec.mode;
    return out;
}

CoeffGrid add_noise(const CoeffGrid& grid, const NoiseSpec& spec) {
    const auto support = full_support(grid);
    return add_noise(grid, spec, support);
}

std::vector<Index> full_support(const CoeffGrid& grid) {
    std::vector<Index> out;
    out.reserve(grid.data.size());
    for (int k = 0; k <= grid.K(); ++k)
        for (int j = 0; j <= grid.J(); ++j) out.push_back({k, j});
    return out;
}

double lp_norm(std::span<const double> values, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    if (m == 0.0 || p == kInfinity) return m;
    double sum = 0.0;
    if (p == 2.0) {
        for (double v : values) {
            const double y = v / m;
            sum += y * y;
        }
        return m * std::sqrt(sum);
    }
    for (double v : values) sum += std::pow(std::abs(v) / m, p);
    return m * std::pow(sum, 1.0 / p);
}

double lp_norm(const CoeffGrid& grid, double p) { return lp_norm(grid.data.flat(), p); }

double lp_norm_difference(const CoeffGrid& a, const CoeffGrid& b, double p) {
    const int K = std::max(a.K(), b.K());
    const int J = std::max(a.J(), b.J());
    std::vector<double> diff;
    diff.reserve(static_cast<std::size_t>(K + 1) * static_cast<std::size_t>(J + 1));
    auto value = [](const CoeffGrid& g, int k, int j) {
        return (k <= g.K() && j <= g.J()) ? g(k, j) : 0.0;
    };
    for (int k = 0; k <= K; ++k)
        for (int j = 0; j <= J; ++j) diff.push_back(value(a, k, j) - value(b, k, j));
    return lp_norm(diff, p);
}

Grid2D synthesize(const CoeffGrid& grid, std::span<const double> t_points,
                  std::span<const double> tau_points) {
    return synthesize(grid.data, t_points, tau_points);
}

}  // namespace hcd
