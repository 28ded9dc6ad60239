#pragma once
// Reference implementations used only by the tests. None of them call into
// the library, so agreement with it is an independent check.
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline std::vector<double> linspace(double a, double b, int count) {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = a + (b - a) * i / (count - 1);
    return out;
}

/// Ascending monomial coefficients.
inline double poly_eval(const std::vector<double>& a, double x) {
    double s = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) s = s * x + a[i];
    return s;
}

inline std::vector<double> poly_derivative(std::vector<double> a, int order) {
    for (int o = 0; o < order; ++o) {
        if (a.size() <= 1) return {0.0};
        std::vector<double> d(a.size() - 1);
        for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * static_cast<double>(i);
        a = std::move(d);
    }
    return a;
}

/// P_n(x) from Rodrigues' formula: expand (x^2-1)^n, differentiate n times,
/// divide by 2^n n!. Long double keeps the alternating sums accurate for n <= 20.
inline double rodrigues_legendre(int n, double x) {
    std::vector<long double> c(2 * n + 1, 0.0L);
    long double binom = 1.0L;
    for (int m = 0; m <= n; ++m) {
        c[2 * m] = ((n - m) % 2 == 0 ? 1.0L : -1.0L) * binom;
        binom = binom * (n - m) / (m + 1);
    }
    for (int o = 0; o < n; ++o)
        for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] = c[i + 1] * static_cast<long double>(i + 1);
    long double s = 0.0L;
    for (int i = n; i >= 0; --i) s = s * x + c[i];
    long double denom = 1.0L;
    for (int i = 1; i <= n; ++i) denom *= 2.0L * i;
    return static_cast<double>(s / denom);
}

/// P_n(cos th) = sum_m g_m g_{n-m} cos((n-2m) th), g_m = (2m-1)!!/(2m)!!.
/// All terms are positive so the sum is well conditioned for any n.
/// Returns P_n'(x) through dP/dth / (-sin th).
inline double cosine_series_legendre_derivative(int n, double x) {
    std::vector<double> g(n + 1);
    g[0] = 1.0;
    for (int m = 1; m <= n; ++m) g[m] = g[m - 1] * (2.0 * m - 1.0) / (2.0 * m);
    const double th = std::acos(x);
    double dth = 0.0;
    for (int m = 0; m <= n; ++m) dth -= g[m] * g[n - m] * (n - 2 * m) * std::sin((n - 2 * m) * th);
    return dth / -std::sin(th);
}

/// All sign changes of f on [a, b], refined by bisection to full precision.
inline std::vector<double> bisect_roots(const std::function<double(double)>& f, double a, double b, int samples) {
    std::vector<double> roots;
    double x0 = a, f0 = f(a);
    for (int i = 1; i <= samples; ++i) {
        const double x1 = a + (b - a) * i / samples, f1 = f(x1);
        if (f0 == 0.0) roots.push_back(x0);
        else if (f0 * f1 < 0.0) {
            double lo = x0, hi = x1, flo = f0;
            for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                const double fm = f(mid);
                if ((fm < 0.0) == (flo < 0.0)) lo = mid, flo = fm;
                else hi = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1, f0 = f1;
    }
    return roots;
}

/// The piecewise polynomial factor of the two worked examples, written out.
inline double example_f(double t) {
    const double common = -t * t / 8 + std::pow(t, 4) / 12 - std::pow(t, 5) / 25;
    if (t < 0) return common + std::pow(t, 7) / 38 - std::pow(t, 8) / 108;
    return common + std::pow(t, 7) / 102 - std::pow(t, 8) / 198;
}

inline std::vector<double> example_left() { return {0, 0, -1.0 / 8, 0, 1.0 / 12, -1.0 / 25, 0, 1.0 / 38, -1.0 / 108}; }
inline std::vector<double> example_right() { return {0, 0, -1.0 / 8, 0, 1.0 / 12, -1.0 / 25, 0, 1.0 / 102, -1.0 / 198}; }

/// Order-r derivative of example_f (one-sided at 0 from the right).
inline double example_f_derivative(int r, double t) {
    return poly_eval(poly_derivative(t < 0 ? example_left() : example_right(), r), t);
}

}  // namespace oracle
