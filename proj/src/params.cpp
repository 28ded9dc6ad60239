#include "hcd/params.hpp"

#include <stdexcept>

#include "hcd/format.hpp"

namespace hcd {

std::string to_string(Axis axis) { return axis == Axis::t_axis ? "t" : "tau"; }

std::string to_string(Metric metric) { return metric == Metric::l2 ? "L2" : "C"; }

Axis parse_axis(const std::string& text) {
    if (text == "t" || text == "t_axis" || text == "r0") return Axis::t_axis;
    if (text == "tau" || text == "tau_axis" || text == "0r") return Axis::tau_axis;
    throw std::invalid_argument("unknown axis '" + text + "' (expected t or tau)");
}

Metric parse_metric(const std::string& text) {
    if (text == "L2" || text == "l2") return Metric::l2;
    if (text == "C" || text == "c") return Metric::c;
    throw std::invalid_argument("unknown metric '" + text + "' (expected L2 or C)");
}

double parse_p(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf") return kInfinity;
    const double p = parse_double(text);
    if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1 or inf, got " + text);
    return p;
}

std::string format_p(double p) { return p == kInfinity ? "inf" : format_number(p); }

}  // namespace hcd
