#include <doctest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <random>

#include "hcd/coeffs.hpp"
#include "hcd/corpus.hpp"
#include "hcd/grid_io.hpp"
#include "hcd/legendre.hpp"
#include "hcd/truncation.hpp"
#include "oracles.hpp"

using namespace hcd;

namespace {

TestFunction unit_basis(int k, int j) {
    std::vector<double> a(k + 1, 0.0), b(j + 1, 0.0);
    a[k] = 1.0;
    b[j] = 1.0;
    return TestFunction::separable("unit", Factor::legendre_series(a), Factor::legendre_series(b), 1.0, std::nullopt,
                                   std::max(k, j));
}

TestFunction linear_t() {
    return TestFunction::separable("t", Factor([](int o, double x) { return o == 0 ? x : (o == 1 ? 1.0 : 0.0); }),
                                   Factor([](int o, double) { return o == 0 ? 1.0 : 0.0; }), 1.0);
}

double max_abs_diff(const CoeffGrid& a, const CoeffGrid& b) {
    double worst = 0.0;
    for (int k = 0; k <= a.K(); ++k)
        for (int j = 0; j <= a.J(); ++j) worst = std::max(worst, std::abs(a(k, j) - b(k, j)));
    return worst;
}

CoeffGrid random_coeffs(int K, int J, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    CoeffGrid c(K, J);
    for (double& v : c.data.flat()) v = g(rng) * std::pow(10.0, static_cast<int>(rng() % 7) - 3);
    return c;
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("hcd_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("exact_coeffs: orthonormal basis element") {
    const CoeffGrid c = exact_coeffs(unit_basis(2, 3), 6, 6, 40);
    for (int k = 0; k <= 6; ++k)
        for (int j = 0; j <= 6; ++j) CHECK(std::abs(c(k, j) - ((k == 2 && j == 3) ? 1.0 : 0.0)) < 1e-12);
    CHECK(c.provenance.source == Source::exact);
}

TEST_CASE("exact_coeffs: f = t") {
    const CoeffGrid c = exact_coeffs(linear_t(), 4, 4, 40);
    for (int k = 0; k <= 4; ++k)
        for (int j = 0; j <= 4; ++j) {
            const double expected = (k == 1 && j == 0) ? 2.0 / 3.0 * std::sqrt(3.0) : 0.0;
            CHECK(std::abs(c(k, j) - expected) < 1e-14);
        }
    CHECK_THROWS_AS(exact_coeffs(linear_t(), 10, 10, 20), std::invalid_argument);
}

TEST_CASE("exact_coeffs: Example 1 Parseval against a direct quadrature of F^2") {
    const TestFunction f = example1_function();
    const CoeffGrid c = exact_coeffs(f, 64, 64);
    double sum = 0.0;
    for (double v : c.data.flat()) sum += v * v;
    // ||F||^2 = (int f^2)^2 / C^2 with int f^2 over two 20-point panels (f^2 has degree 16).
    const QuadRule g = gauss_rule(20);
    double f2 = 0.0;
    for (int panel = 0; panel < 2; ++panel)
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const double x = panel == 0 ? (g.nodes[i] - 1.0) / 2.0 : (g.nodes[i] + 1.0) / 2.0;
            f2 += 0.5 * g.weights[i] * oracle::example_f(x) * oracle::example_f(x);
        }
    const double norm2 = f2 * f2 / (947.0 * 947.0);
    CHECK(std::abs(sum - norm2) <= 1e-10 * norm2);
}

TEST_CASE("trapezoid_coeffs: constant function") {
    const TestFunction one = TestFunction::separable("one", Factor([](int o, double) { return o == 0 ? 1.0 : 0.0; }),
                                                     Factor([](int o, double) { return o == 0 ? 1.0 : 0.0; }), 1.0);
    for (double h : {0.5, 0.01, 1e-3}) {
        const CoeffGrid c = trapezoid_coeffs(one, 3, 3, h);
        CHECK(c(0, 0) == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(c.provenance.source == Source::trapezoid);
        CHECK(c.provenance.h == h);
    }
}

TEST_CASE("trapezoid_coeffs: f = t converges at second order") {
    const CoeffGrid exact = exact_coeffs(linear_t(), 1, 1, 40);
    std::vector<double> err;
    for (double h : {1e-2, 5e-3, 2.5e-3}) err.push_back(std::abs(trapezoid_coeffs(linear_t(), 1, 1, h)(1, 0) - exact(1, 0)));
    for (std::size_t i = 1; i < err.size(); ++i) CHECK(std::log2(err[i - 1] / err[i]) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("trapezoid_coeffs: Example 1 convergence order and the h=1e-4 error level") {
    const TestFunction f = example1_function();
    const CoeffGrid exact = exact_coeffs(f, 28, 28);
    std::vector<double> err;
    for (double h : {4e-3, 2e-3, 1e-3}) err.push_back(max_abs_diff(trapezoid_coeffs(f, 28, 28, h), exact));
    for (std::size_t i = 1; i < err.size(); ++i) {
        const double order = std::log2(err[i - 1] / err[i]);
        CHECK(order >= 1.7);
        CHECK(order <= 2.3);
    }
    // The coefficient error at h = 1e-4 must stay within the delta = 1e-7 budget it is paired with.
    const double fine = max_abs_diff(trapezoid_coeffs(f, 28, 28, 1e-4), exact);
    CHECK(fine <= 1e-7);
}

TEST_CASE("trapezoid_coeffs: factorized and generic kernels agree") {
    const TestFunction f = example2_function();
    const CoeffGrid fast = trapezoid_coeffs(f, 12, 12, 1e-2);
    const CoeffGrid slow = trapezoid_coeffs(f, 12, 12, 1e-2, true);
    const CoeffGrid surf = trapezoid_coeffs(f.surface(), 12, 12, 1e-2);
    CHECK(max_abs_diff(fast, slow) < 1e-16);
    CHECK(slow == surf);
    CHECK_THROWS_AS(trapezoid_coeffs(f, 4, 4, 0.3), std::invalid_argument);
}

TEST_CASE("add_noise: rescaled norm is exact") {
    const CoeffGrid base(20, 20);
    for (double p : {1.0, 1.5, 2.0, kInfinity})
        for (std::uint64_t seed : {1u, 2u, 99u}) {
            const NoiseSpec spec{1e-7, p, NoiseMode::rescaled, seed};
            const CoeffGrid noisy = add_noise(base, spec);
            CHECK(std::abs(lp_norm(noisy, p) - 1e-7) <= 1e-12 * 1e-7);
            CHECK(noisy.provenance.source == Source::noisy);
            CHECK(noisy.provenance.seed == seed);
        }
}

TEST_CASE("add_noise: examples") {
    CoeffGrid base = random_coeffs(8, 8, 11);
    const CoeffGrid tiny = add_noise(base, NoiseSpec{1e-300, 2.0, NoiseMode::rescaled, 5});
    for (int k = 0; k <= 8; ++k)
        for (int j = 0; j <= 8; ++j) CHECK(std::abs(tiny(k, j) - base(k, j)) <= 1e-299);

    const CoeffGrid zero(15, 15);
    const CoeffGrid linf = add_noise(zero, NoiseSpec{1e-7, kInfinity, NoiseMode::rescaled, 3});
    double biggest = 0.0;
    for (double v : linf.data.flat()) biggest = std::max(biggest, std::abs(v));
    CHECK(biggest == 1e-7);

    const CoeffGrid l2 = add_noise(zero, NoiseSpec{1e-8, 2.0, NoiseMode::rescaled, 42});
    double sq = 0.0;
    for (double v : l2.data.flat()) sq += v * v;
    CHECK(std::abs(sq - 1e-16) <= 1e-30);

    CHECK_THROWS_AS(add_noise(zero, NoiseSpec{0.0, 2.0, NoiseMode::rescaled, 1}), std::invalid_argument);
    CHECK_THROWS_AS(add_noise(zero, NoiseSpec{1.0, 2.0, NoiseMode::rescaled, 1}), std::invalid_argument);
    CHECK_THROWS_AS(add_noise(zero, NoiseSpec{1e-3, 0.5, NoiseMode::rescaled, 1}), std::invalid_argument);
}

TEST_CASE("add_noise: support restriction and raw mode") {
    const CoeffGrid zero(10, 10);
    const CrossSet cross = build_cross(10, 2.0, 2);
    const CoeffGrid noisy = add_noise(zero, NoiseSpec{1e-6, 2.0, NoiseMode::rescaled, 4}, cross.indices);
    for (int k = 0; k <= 10; ++k)
        for (int j = 0; j <= 10; ++j)
            if (!cross.contains(k, j)) CHECK(noisy(k, j) == 0.0);
    CHECK(std::abs(lp_norm(noisy, 2.0) - 1e-6) <= 1e-18);

    const std::vector<double> raw = draw_noise(NoiseSpec{1e-3, 2.0, NoiseMode::raw_gaussian, 4}, 20000);
    double mean_sq = 0.0;
    for (double v : raw) mean_sq += v * v / raw.size();
    CHECK(std::sqrt(mean_sq) == doctest::Approx(1e-3).epsilon(0.03));
}

TEST_CASE("add_noise: identical seeds give bit-identical grids") {
    const CoeffGrid base = random_coeffs(12, 9, 3);
    const NoiseSpec spec{1e-5, 1.5, NoiseMode::rescaled, 77};
    CHECK(add_noise(base, spec) == add_noise(base, spec));
    const NoiseSpec other{1e-5, 1.5, NoiseMode::rescaled, 78};
    CHECK_FALSE(add_noise(base, spec) == add_noise(base, other));
}

TEST_CASE("lp_norm: examples") {
    const std::vector<double> three = {3.0};
    const std::vector<double> pair = {3.0, 4.0};
    CHECK(lp_norm(three, 1.0) == 3.0);
    CHECK(lp_norm(pair, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(lp_norm(pair, kInfinity) == 4.0);

    const CoeffGrid g = random_coeffs(9, 9, 21);
    long double direct = 0.0L;
    for (double v : g.data.flat()) direct += std::pow(static_cast<long double>(std::abs(v)), 1.5L);
    const double expected = static_cast<double>(std::pow(direct, 1.0L / 1.5L));
    CHECK(std::abs(lp_norm(g, 1.5) - expected) <= 1e-12 * expected);

    const std::vector<double> tiny = {1e-300, 1e-300};
    CHECK(lp_norm(tiny, 2.0) == doctest::Approx(std::sqrt(2.0) * 1e-300).epsilon(1e-14));
    CHECK(lp_norm_difference(g, g, 2.0) == 0.0);
}

TEST_CASE("Parseval for random grids up to degree 40") {
    const QuadRule rule = gauss_rule(64);
    for (int trial = 0; trial < 6; ++trial) {
        const int K = 5 + 7 * trial, J = 40 - 6 * trial;
        const CoeffGrid c = random_coeffs(K, J, 100 + trial);
        const Grid2D s = synthesize(c, rule.nodes, rule.nodes);
        double quad = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            for (std::size_t m = 0; m < rule.nodes.size(); ++m) quad += rule.weights[i] * rule.weights[m] * s(i, m) * s(i, m);
        for (double v : c.data.flat()) sum += v * v;
        CHECK(std::abs(quad - sum) <= 1e-9 * sum);
    }
}

TEST_CASE("coefficient grid files round-trip bit-exactly") {
    const auto dir = scratch_dir("coeffs_io");
    for (int trial = 0; trial < 5; ++trial) {
        CoeffGrid c = random_coeffs(3 + trial, 7 - trial, 500 + trial);
        c(0, 0) = -0.0;
        c(1, 1) = 5e-324;
        c(2, 0) = 1.7976931348623157e308;
        c.provenance = Provenance{Source::noisy, Source::trapezoid, 8e-5, 1e-8, kInfinity, 1234567890123ull,
                                  NoiseMode::raw_gaussian};
        const auto path = dir / ("grid" + std::to_string(trial) + ".csv");
        write_coeff_grid(c, path, {{"note", "trial"}});
        KeyValues extra;
        const CoeffGrid back = read_coeff_grid(path, &extra);
        CHECK(back.data.rows() == c.data.rows());
        CHECK(back.provenance == c.provenance);
        for (std::size_t i = 0; i < c.data.flat().size(); ++i)
            CHECK(std::bit_cast<std::uint64_t>(back.data.flat()[i]) == std::bit_cast<std::uint64_t>(c.data.flat()[i]));
        CHECK(extra.at("note") == "trial");
    }
    CHECK_THROWS(read_coeff_grid(dir / "missing.csv"));
}
