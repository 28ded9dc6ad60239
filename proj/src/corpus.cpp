#include "hcd/corpus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hcd/format.hpp"

namespace hcd {

Factor example_factor() {
    // ascending monomial coefficients, degree 8
    std::vector<double> left{0.0, 0.0, -1.0 / 8, 0.0, 1.0 / 12, -1.0 / 25, 0.0, 1.0 / 38, -1.0 / 108};
    std::vector<double> right{0.0, 0.0, -1.0 / 8, 0.0, 1.0 / 12, -1.0 / 25, 0.0, 1.0 / 102, -1.0 / 198};
    return Factor::piecewise_polynomial(std::move(left), std::move(right), 0.0);
}

TestFunction example1_function() {
    SmoothnessParams cls{2.0, 5.6, 5.6, 2.0, 1e-7};
    return TestFunction::separable("example1", example_factor(), example_factor(), 947.0, cls);
}

TestFunction example2_function() {
    SmoothnessParams cls{2.0, 5.4, 5.4, 2.0, 1e-7};
    return TestFunction::separable("example2", example_factor(), Factor::cosine(2.0, std::numbers::pi), 26318.0,
                                   cls);
}

TestFunction class_function(double mu1, double mu2, double s, double eps, int degree) {
    if (degree < 1) throw std::invalid_argument("class_function: degree must be >= 1");
    if (!(s >= 1.0)) throw std::invalid_argument("class_function: s must be >= 1");
    std::vector<double> g(static_cast<std::size_t>(degree) + 1);
    std::vector<double> h(g.size());
    // The class norm of a * g x h factors: ||.||^s = a^s (sum (kbar^mu1 g_k)^s)(sum (jbar^mu2 h_j)^s).
    double sum_g = 0.0;
    double sum_h = 0.0;
    for (int k = 0; k <= degree; ++k) {
        const double kb = std::max(1, k);
        g[static_cast<std::size_t>(k)] = std::pow(kb, -mu1 - 1.0 / s - eps);
        h[static_cast<std::size_t>(k)] = std::pow(kb, -mu2 - 1.0 / s - eps);
        sum_g += std::pow(std::pow(kb, mu1) * g[static_cast<std::size_t>(k)], s);
        sum_h += std::pow(std::pow(kb, mu2) * h[static_cast<std::size_t>(k)], s);
    }
    const double norm = std::pow(sum_g * sum_h, 1.0 / s);
    SmoothnessParams cls{s, mu1, mu2, 2.0, 1e-7};
    std::string id = "class_s" + format_number(s) + "_mu" + format_number(mu1);
    if (mu2 != mu1) id += "_" + format_number(mu2);
    return TestFunction::separable(std::move(id), Factor::legendre_series(std::move(g)),
                                   Factor::legendre_series(std::move(h)), norm, cls, degree);
}

std::vector<TestFunction> corpus() {
    return {example1_function(), example2_function(), class_function(5.6, 5.6, 2.0)};
}

TestFunction find_function(const std::string& id) {
    if (id == "example1") return example1_function();
    if (id == "example2") return example2_function();
    const std::string prefix = "class_s";
    if (id.rfind(prefix, 0) == 0) {
        const auto mu_pos = id.find("_mu");
        if (mu_pos != std::string::npos) {
            try {
                const double s = parse_double(id.substr(prefix.size(), mu_pos - prefix.size()));
                const auto parts = split(id.substr(mu_pos + 3), '_');
                const double mu1 = parse_double(parts.at(0));
                const double mu2 = parts.size() > 1 ? parse_double(parts.at(1)) : mu1;
                return class_function(mu1, mu2, s);
            } catch (const std::exception&) {
            }
        }
    }
    throw std::invalid_argument("unknown function id '" + id + "' (expected example1, example2 or class_s<s>_mu<mu>)");
}

}  // namespace hcd
