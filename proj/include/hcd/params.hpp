#pragma once

#include <limits>
#include <string>

namespace hcd {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Which partial derivative is recovered: (r,0) differentiates in t, (0,r) in tau.
enum class Axis { t_axis, tau_axis };

enum class Metric { l2, c };

struct Index {
    int k = 0;
    int j = 0;
    friend bool operator==(const Index&, const Index&) = default;
    friend auto operator<=>(const Index&, const Index&) = default;
};

/// Function class and noise model: s, mu = (mu1, mu2) describe the class;
/// p and delta the l_p error level of the coefficient perturbation.
struct SmoothnessParams {
    double s = 2.0;
    double mu1 = 5.6;
    double mu2 = 5.6;
    double p = 2.0;
    double delta = 1e-7;
};

/// 1/p with 1/inf = 0.
inline double reciprocal(double p) { return p == kInfinity ? 0.0 : 1.0 / p; }

std::string to_string(Axis axis);
std::string to_string(Metric metric);
Axis parse_axis(const std::string& text);
Metric parse_metric(const std::string& text);

/// Accepts "inf", "infinity" or a number >= 1.
double parse_p(const std::string& text);
std::string format_p(double p);

}  // namespace hcd
