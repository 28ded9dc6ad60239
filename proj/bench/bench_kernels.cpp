// Serial vs OpenMP timings for the hot kernels.
// Usage: bench_kernels [repeats]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include "hcd/kernels.hpp"
#include "hcd/legendre.hpp"

using namespace hcd;
namespace ser = hcd::kernels::serial;
namespace par = hcd::kernels::parallel;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, int repeats, const std::function<void()>& s, const std::function<void()>& p) {
    const double ts = best_of(repeats, s), tp = best_of(repeats, p);
    std::printf("%-28s serial %9.4f s   parallel %9.4f s   speedup %5.2fx\n", name, ts, tp, ts / tp);
}

Grid2D random_grid(std::size_t rows, std::size_t cols) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Grid2D out(rows, cols);
    for (double& v : out.flat()) v = g(rng);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    std::printf("threads: %d, best of %d\n", kernels::max_threads(), repeats);

    const QuadRule gauss = gauss_rule(200);
    std::vector<double> uniform(513);
    for (int i = 0; i < 513; ++i) uniform[i] = -1.0 + 2.0 * i / 512;

    const Grid2D coeffs = random_grid(65, 65);
    const Grid2D phi_u = ser::basis_table(64, uniform);
    row("synthesize 65^2 -> 513^2", repeats, [&] { ser::synthesize(coeffs, phi_u, phi_u); },
        [&] { par::synthesize(coeffs, phi_u, phi_u); });

    row("basis_table 300 x 513", repeats, [&] { ser::basis_table(300, uniform); }, [&] { par::basis_table(300, uniform); });

    const Grid2D phi_g = ser::basis_table(64, gauss.nodes);
    auto f = [](double t, double tau) { return std::exp(t) * std::cos(3.0 * tau); };
    row("project 200^2 nodes -> 65^2", repeats,
        [&] { ser::project(f, gauss.nodes, gauss.weights, phi_g, gauss.nodes, gauss.weights, phi_g); },
        [&] { par::project(f, gauss.nodes, gauss.weights, phi_g, gauss.nodes, gauss.weights, phi_g); });

    const Grid2D a = random_grid(300, 300), b = random_grid(300, 300);
    row("matmul 300^3", repeats, [&] { ser::matmul(a, b); }, [&] { par::matmul(a, b); });

    row("sample 513^2", repeats, [&] { ser::sample(f, uniform, uniform); }, [&] { par::sample(f, uniform, uniform); });

    const Grid2D x = random_grid(513, 513), y = random_grid(513, 513);
    row("max_abs_diff 513^2", repeats, [&] { ser::max_abs_diff(x, y); }, [&] { par::max_abs_diff(x, y); });
    return 0;
}
