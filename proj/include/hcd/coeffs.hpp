#pragma once

// Fourier-Legendre coefficient grids c(k, j) = <f, phi_k phi_j> and the
// additive l_p-bounded perturbation model.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hcd/grid.hpp"
#include "hcd/params.hpp"
#include "hcd/test_function.hpp"

namespace hcd {

enum class Source { exact, trapezoid, noisy };
enum class NoiseMode { rescaled, raw_gaussian };

std::string to_string(Source source);
std::string to_string(NoiseMode mode);
Source parse_source(const std::string& text);
NoiseMode parse_noise_mode(const std::string& text);

/// Where a grid came from. For noisy grids `base` is the source the noise was
/// added to and h is kept when that base was a trapezoid grid.
struct Provenance {
    Source source = Source::exact;
    Source base = Source::exact;
    double h = 0.0;
    double delta = 0.0;
    double p = 2.0;
    std::uint64_t seed = 0;
    NoiseMode mode = NoiseMode::rescaled;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Dense coefficient array, rows k = 0..K, columns j = 0..J.
struct CoeffGrid {
    Grid2D data;
    Provenance provenance;

    CoeffGrid() = default;
    CoeffGrid(int K, int J) : data(static_cast<std::size_t>(K) + 1, static_cast<std::size_t>(J) + 1) {}
    CoeffGrid(Grid2D values, Provenance prov) : data(std::move(values)), provenance(prov) {}

    int K() const noexcept { return static_cast<int>(data.rows()) - 1; }
    int J() const noexcept { return static_cast<int>(data.cols()) - 1; }
    double operator()(int k, int j) const { return data(static_cast<std::size_t>(k), static_cast<std::size_t>(j)); }
    double& operator()(int k, int j) { return data(static_cast<std::size_t>(k), static_cast<std::size_t>(j)); }

    friend bool operator==(const CoeffGrid&, const CoeffGrid&) = default;
};

struct NoiseSpec {
    double delta = 1e-7;
    double p = 2.0;
    NoiseMode mode = NoiseMode::rescaled;
    std::uint64_t seed = 0;
};

/// Tensor Gauss approximation of <f, phi_k phi_j> for k <= K, j <= J using
/// quad_nodes nodes per panel (panels split at the function's breakpoints).
/// Requires quad_nodes >= max(K, J) + 32.
CoeffGrid exact_coeffs(const TestFunction& f, int K, int J, int quad_nodes);
CoeffGrid exact_coeffs(const TestFunction& f, int K, int J);

/// Same integrals by the 2D composite trapezoid rule on the uniform grid of step h.
/// Separable functions use the factorized form of the same double sum unless
/// `force_generic` is set.
CoeffGrid trapezoid_coeffs(const TestFunction& f, int K, int J, double h, bool force_generic = false);

/// The trapezoid rule applied to an arbitrary surface (always the 2D kernel).
CoeffGrid trapezoid_coeffs(const Surface& f, int K, int J, double h);

/// The perturbation xi over `support` (in support order) for a noise spec.
/// rescaled: Gaussian draw scaled so that ||xi||_p = delta;
/// raw_gaussian: delta * Gaussian draw.
std::vector<double> draw_noise(const NoiseSpec& spec, std::size_t count);

/// grid + xi on the support; entries outside it are left alone.
CoeffGrid add_noise(const CoeffGrid& grid, const NoiseSpec& spec, std::span<const Index> support);
/// Full-grid support, row-major order.
CoeffGrid add_noise(const CoeffGrid& grid, const NoiseSpec& spec);

/// l_p norm, p in [1, inf]; computed with max scaling so tiny entries do not underflow.
double lp_norm(std::span<const double> values, double p);
double lp_norm(const CoeffGrid& grid, double p);
double lp_norm_difference(const CoeffGrid& a, const CoeffGrid& b, double p);

Grid2D synthesize(const CoeffGrid& grid, std::span<const double> t_points,
                  std::span<const double> tau_points);

std::vector<Index> full_support(const CoeffGrid& grid);

}  // namespace hcd
