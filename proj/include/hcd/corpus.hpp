#pragma once

#include <string>
#include <vector>

#include "hcd/test_function.hpp"

namespace hcd {

/// F(t, tau) = f(t) f(tau) / 947 with the piecewise polynomial
/// f(t) = -t^2/8 + t^4/12 - t^5/25 + {t^7/38 - t^8/108 for t < 0, t^7/102 - t^8/198 for t >= 0}.
TestFunction example1_function();

/// F(t, tau) = f(t) * 2 cos(pi tau) / 26318 with the same f.
TestFunction example2_function();

/// Separable function with coefficients a * kbar^(-mu1 - 1/s - eps) * jbar^(-mu2 - 1/s - eps)
/// for k, j <= degree, where a puts its class norm at exactly 1.
TestFunction class_function(double mu1, double mu2, double s, double eps = 0.01, int degree = 300);

/// The piecewise polynomial factor shared by both examples.
Factor example_factor();

/// example1, example2 and the default class function (s = 2, mu = 5.6).
std::vector<TestFunction> corpus();

/// Looks up "example1", "example2" or "class_s<s>_mu<mu>" (e.g. class_s2_mu5.6).
/// Throws std::invalid_argument for unknown ids.
TestFunction find_function(const std::string& id);

}  // namespace hcd
