#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hcd/corpus.hpp"
#include "hcd/coeffs.hpp"
#include "hcd/legendre.hpp"
#include "oracles.hpp"

using namespace hcd;

TEST_CASE("eval_phi: constant, endpoint and Rodrigues values") {
    CHECK(eval_phi(0, 0.37) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(eval_phi(1, 1.0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
    for (int k : {2, 5, 9, 17}) {
        for (double t : {-1.0, -0.71, 0.0, 0.3, 0.88, 1.0}) {
            const double expected = std::sqrt(k + 0.5) * oracle::rodrigues_legendre(k, t);
            CHECK(std::abs(eval_phi(k, t) - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST_CASE("evaluate_basis matches eval_phi") {
    const std::vector<double> pts = {-1.0, -0.2, 0.5, 1.0};
    const BasisEval b = evaluate_basis(12, pts);
    REQUIRE(b.values.rows() == 13);
    REQUIRE(b.values.cols() == pts.size());
    for (int k = 0; k <= 12; ++k)
        for (std::size_t i = 0; i < pts.size(); ++i) CHECK(b.values(k, i) == eval_phi(k, pts[i]));
}

TEST_CASE("gauss_rule: small cases") {
    const QuadRule r1 = gauss_rule(1);
    REQUIRE(r1.nodes.size() == 1);
    CHECK(std::abs(r1.nodes[0]) < 1e-15);
    CHECK(r1.weights[0] == doctest::Approx(2.0));

    const QuadRule r2 = gauss_rule(2);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(gauss_rule(0), std::invalid_argument);
}

TEST_CASE("gauss_rule: m=5 nodes are the roots of P_5") {
    auto p5 = [](double x) { return (63 * std::pow(x, 5) - 70 * std::pow(x, 3) + 15 * x) / 8; };
    const std::vector<double> roots = oracle::bisect_roots(p5, -1.0, 1.0, 2000);
    const QuadRule rule = gauss_rule(5);
    REQUIRE(roots.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(rule.nodes[i] - roots[i]) < 1e-12);
}

TEST_CASE("gauss_rule: weights sum to 2 and monomials up to degree 2m-1 are exact") {
    for (int m : {1, 2, 3, 7, 20, 64}) {
        const QuadRule rule = gauss_rule(m);
        double wsum = 0.0;
        for (double w : rule.weights) {
            CHECK(w > 0.0);
            wsum += w;
        }
        CHECK(std::abs(wsum - 2.0) < 1e-12);
        for (std::size_t i = 1; i < rule.nodes.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        for (int d = 0; d <= 2 * m - 1; ++d) {
            double q = 0.0;
            for (int i = 0; i < m; ++i) q += rule.weights[i] * std::pow(rule.nodes[i], d);
            const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
            CHECK(std::abs(q - exact) < 1e-12);
        }
    }
}

TEST_CASE("composite_gauss_rule integrates |t| exactly") {
    const std::vector<double> cut = {0.0};
    const QuadRule rule = composite_gauss_rule(4, cut);
    double q = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) q += rule.weights[i] * std::abs(rule.nodes[i]);
    CHECK(std::abs(q - 1.0) < 1e-14);
}

TEST_CASE("trapezoid_rule validates its step") {
    const QuadRule rule = trapezoid_rule(0.5);
    REQUIRE(rule.nodes.size() == 5);
    CHECK(rule.weights.front() == doctest::Approx(0.25));
    CHECK(rule.weights[1] == doctest::Approx(0.5));
    CHECK_THROWS_AS(trapezoid_rule(0.3), std::invalid_argument);
    CHECK_THROWS_AS(trapezoid_rule(0.0), std::invalid_argument);
    CHECK_THROWS_AS(trapezoid_rule(2.0), std::invalid_argument);
}

TEST_CASE("orthonormality for degrees up to 40") {
    const QuadRule rule = gauss_rule(64);
    const BasisEval b = evaluate_basis(40, rule.nodes);
    double worst = 0.0;
    for (int k = 0; k <= 40; ++k)
        for (int l = 0; l <= 40; ++l) {
            double s = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * b.values(k, i) * b.values(l, i);
            worst = std::max(worst, std::abs(s - (k == l ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("first derivative operator: columns and sparsity") {
    const DerivOperator m = mueller_first_derivative(10);
    CHECK(m.order() == 1);
    CHECK(m.max_degree() == 10);
    for (int l = 0; l <= 10; ++l) CHECK(m(l, 0) == 0.0);
    CHECK(m(0, 1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    for (int l = 1; l <= 10; ++l) CHECK(m(l, 1) == 0.0);
    CHECK(m(1, 2) == doctest::Approx(std::sqrt(15.0)).epsilon(1e-15));
    CHECK(m(0, 2) == 0.0);
    for (int k = 0; k <= 10; ++k) {
        int nonzero = 0;
        for (int l = 0; l <= 10; ++l) {
            if (m(l, k) != 0.0) {
                ++nonzero;
                CHECK(l < k);
                CHECK((k + l) % 2 == 1);
            }
        }
        CHECK(nonzero == (k + 1) / 2);
    }
    CHECK_THROWS(mueller_first_derivative(0));
}

TEST_CASE("iterated operator") {
    const DerivOperator m1 = mueller_first_derivative(8);
    const DerivOperator same = iterate_derivative(m1, 1);
    CHECK(same.matrix() == m1.matrix());

    const DerivOperator m2 = iterate_derivative(m1, 2);
    CHECK(m2.order() == 2);
    CHECK(m2(0, 2) == doctest::Approx(std::sqrt(45.0)).epsilon(1e-14));
    for (int l = 1; l <= 8; ++l) CHECK(m2(l, 2) == 0.0);

    // t^3 = 2/5 P_3 + 3/5 P_1, and 6t = 6 P_1.
    std::vector<double> cube(4, 0.0);
    cube[1] = 0.6 / std::sqrt(1.5);
    cube[3] = 0.4 / std::sqrt(3.5);
    const std::vector<double> d2 = derivative_operator(3, 2).apply(cube);
    CHECK(std::abs(d2[0]) < 1e-14);
    CHECK(d2[1] == doctest::Approx(6.0 / std::sqrt(1.5)).epsilon(1e-14));
    CHECK(std::abs(d2[2]) < 1e-14);
    CHECK(std::abs(d2[3]) < 1e-14);
}

TEST_CASE("operator reproduces analytic derivatives of random polynomials (degree <= 30, r <= 3)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const QuadRule rule = gauss_rule(48);
    const std::vector<double> pts = oracle::linspace(-1.0, 1.0, 33);
    for (int trial = 0; trial < 20; ++trial) {
        const int degree = 1 + trial % 30;
        std::vector<double> mono(degree + 1);
        for (double& a : mono) a = u(rng);
        // Legendre coefficients by exact Gauss projection of the monomial form.
        std::vector<double> c(degree + 1, 0.0);
        for (int k = 0; k <= degree; ++k)
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                c[k] += rule.weights[i] * oracle::poly_eval(mono, rule.nodes[i]) * eval_phi(k, rule.nodes[i]);
        for (int r = 1; r <= 3; ++r) {
            const std::vector<double> dc = derivative_operator(degree, r).apply(c);
            const std::vector<double> dmono = oracle::poly_derivative(mono, r);
            double worst = 0.0, scale = 1.0;
            for (double t : pts) {
                const double exact = oracle::poly_eval(dmono, t);
                worst = std::max(worst, std::abs(eval_series(dc, t) - exact));
                scale = std::max(scale, std::abs(exact));
            }
            CHECK_MESSAGE(worst < 1e-8 * scale, "degree " << degree << " r " << r << " err " << worst);
        }
    }
}

TEST_CASE("operator matches polynomial derivatives to 1e-9 relative up to degree 50") {
    const int degree = 50;
    const DerivOperator m1 = mueller_first_derivative(degree);
    for (int k : {10, 31, 50}) {
        std::vector<double> unit(degree + 1, 0.0);
        unit[k] = 1.0;
        const std::vector<double> d = m1.apply(unit);
        // phi_k' against the cosine-series form of P_k.
        for (double t : {-0.6, 0.1, 0.45}) {
            const double exact = std::sqrt(k + 0.5) * oracle::cosine_series_legendre_derivative(k, t);
            CHECK(std::abs(eval_series(d, t) - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("endpoint values of derivatives") {
    // P_k^(r)(1) = (k+r)! / ((k-r)! 2^r r!)
    for (int k = 0; k <= 12; ++k)
        for (int r = 1; r <= 3; ++r) {
            std::vector<double> unit(k + 1, 0.0);
            unit[k] = 1.0;
            const std::vector<double> d = derivative_operator(std::max(k, 1), r).apply(unit);
            double exact = 0.0;
            if (k >= r) {
                exact = 1.0;
                for (int i = k - r + 1; i <= k + r; ++i) exact *= i;
                for (int i = 1; i <= r; ++i) exact /= 2.0 * i;
                exact *= std::sqrt(k + 0.5);
            }
            CHECK(std::abs(eval_series(d, 1.0) - exact) <= 1e-10 * std::max(1.0, std::abs(exact)));
            const double sign = (k - r) % 2 == 0 ? 1.0 : -1.0;
            CHECK(std::abs(eval_series(d, -1.0) - sign * exact) <= 1e-10 * std::max(1.0, std::abs(exact)));
        }
}

TEST_CASE("iterate_derivative reports overflow") {
    CHECK_THROWS_AS(derivative_operator(200, 120), std::overflow_error);
}

TEST_CASE("synthesize: examples") {
    const std::vector<double> pts = {-1.0, -0.3, 0.0, 0.8, 1.0};
    Grid2D one(1, 1);
    one(0, 0) = 1.0;
    const Grid2D s1 = synthesize(one, pts, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t m = 0; m < pts.size(); ++m) CHECK(s1(i, m) == doctest::Approx(0.5).epsilon(1e-15));

    Grid2D lin(2, 2);
    lin(1, 0) = 2.0 / 3.0 * std::sqrt(3.0);
    const Grid2D s2 = synthesize(lin, pts, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t m = 0; m < pts.size(); ++m) CHECK(std::abs(s2(i, m) - pts[i]) < 1e-15);
}

TEST_CASE("synthesize: Example 1 coefficients reproduce the function") {
    const TestFunction f = example1_function();
    const CoeffGrid c = exact_coeffs(f, 60, 60);
    const std::vector<double> pts = oracle::linspace(-1.0, 1.0, 101);
    const Grid2D s = synthesize(c, pts, pts);
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t m = 0; m < pts.size(); ++m)
            worst = std::max(worst, std::abs(s(i, m) - oracle::example_f(pts[i]) * oracle::example_f(pts[m]) / 947.0));
    CHECK(worst < 1e-10);
}
