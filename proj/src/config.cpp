#include "hcd/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hcd/corpus.hpp"
#include "hcd/format.hpp"
#include "hcd/legendre.hpp"

namespace hcd {

std::string to_string(NoiseSource source) { return source == NoiseSource::random ? "random" : "trapezoid"; }

NoiseSource parse_noise_source(const std::string& text) {
    if (text == "random") return NoiseSource::random;
    if (text == "trapezoid") return NoiseSource::trapezoid;
    throw std::invalid_argument("unknown noise source '" + text + "' (expected random or trapezoid)");
}

namespace {

template <typename T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        if constexpr (std::is_floating_point_v<T>)
            out += format_number(values[i]);
        else
            out += std::to_string(values[i]);
    }
    return out;
}

bool parse_bool(const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw std::invalid_argument("expected true or false, got '" + text + "'");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (long long v : parse_integer_list(text)) out.push_back(static_cast<int>(v));
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (command != "example1" && command != "example2" && command != "rate-study")
        throw std::invalid_argument("unknown command '" + command + "'");
    find_function(function_id);
    if (r < 1) throw std::invalid_argument("derivative order r must be >= 1");
    if (!(cls.s >= 1.0) || !std::isfinite(cls.s)) throw std::invalid_argument("class parameter s must lie in [1, inf)");
    if (!(cls.mu1 > 0.0) || !(cls.mu2 > 0.0)) throw std::invalid_argument("smoothness mu1, mu2 must be > 0");
    if (!(cls.p >= 1.0)) throw std::invalid_argument("noise norm p must lie in [1, inf]");
    if (seeds < 1) throw std::invalid_argument("seeds must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("choose_n constant c must be > 0");
    if (gamma && !(*gamma >= 1.0)) throw std::invalid_argument("gamma must be >= 1");
    if (grid_points < 257) throw std::invalid_argument("C-error grid needs at least 257 points per axis");
    if (run_id.empty() || run_id.find('/') != std::string::npos)
        throw std::invalid_argument("run id must be a non-empty name without '/'");

    if (command == "rate-study") {
        if (deltas.size() < 2) throw std::invalid_argument("rate study needs at least two noise levels");
        for (double d : deltas)
            if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("rate study noise levels must lie in (0, 1)");
        return;
    }

    std::size_t rows = 0;
    if (noise == NoiseSource::random) {
        if (!hs.empty()) throw std::invalid_argument("random noise runs take a delta list, not an h list");
        if (deltas.empty()) throw std::invalid_argument("random noise runs need a delta list");
        for (double d : deltas)
            if (!(d >= 0.0 && d < 1.0)) throw std::invalid_argument("noise levels must lie in [0, 1)");
        rows = deltas.size();
    } else {
        if (hs.empty()) throw std::invalid_argument("trapezoid runs need an h list");
        for (double h : hs) trapezoid_rule(h);
        if (!deltas.empty() && deltas.size() != hs.size())
            throw std::invalid_argument("paired delta list must match the h list in length");
        rows = hs.size();
    }
    if (use_choose_n) {
        const bool have_deltas = !deltas.empty();
        if (!have_deltas) throw std::invalid_argument("choose_n needs a (paired) delta list");
        for (double d : deltas)
            if (!(d > 0.0)) throw std::invalid_argument("choose_n needs positive noise levels");
    } else {
        if (n_values.size() != rows)
            throw std::invalid_argument("need one n per row (" + std::to_string(rows) + "), got " +
                                        std::to_string(n_values.size()));
        for (int n : n_values)
            if (n < r) throw std::invalid_argument("every n must be >= r");
    }
}

KeyValues ExperimentConfig::to_key_values() const {
    KeyValues kv;
    kv["experiment.command"] = command;
    kv["experiment.function"] = function_id;
    kv["experiment.r"] = std::to_string(r);
    kv["experiment.axis"] = to_string(axis);
    kv["experiment.run_id"] = run_id;
    kv["class.s"] = format_number(cls.s);
    kv["class.mu1"] = format_number(cls.mu1);
    kv["class.mu2"] = format_number(cls.mu2);
    kv["class.p"] = format_p(cls.p);
    kv["noise.source"] = to_string(noise);
    kv["noise.deltas"] = join(deltas);
    kv["noise.h"] = join(hs);
    kv["noise.mode"] = to_string(mode);
    kv["noise.seeds"] = std::to_string(seeds);
    kv["noise.first_seed"] = std::to_string(first_seed);
    kv["noise.trapezoid_kernel"] = generic_trapezoid ? "generic" : "auto";
    kv["method.n"] = join(n_values);
    kv["method.choose_n"] = use_choose_n ? "true" : "false";
    kv["method.c"] = format_number(c);
    kv["method.gamma"] = gamma ? format_number(*gamma) : "auto";
    kv["method.metric"] = to_string(metric);
    kv["output.grid_points"] = std::to_string(grid_points);
    return kv;
}

void ExperimentConfig::apply(const KeyValues& kv) {
    for (const auto& [key, value] : kv) {
        const std::string v = trim(value);
        try {
            if (key == "experiment.command") command = v;
            else if (key == "experiment.function") function_id = v;
            else if (key == "experiment.r") r = static_cast<int>(parse_integer(v));
            else if (key == "experiment.axis") axis = parse_axis(v);
            else if (key == "experiment.run_id") run_id = v;
            else if (key == "class.s") cls.s = parse_double(v);
            else if (key == "class.mu") cls.mu1 = cls.mu2 = parse_double(v);
            else if (key == "class.mu1") cls.mu1 = parse_double(v);
            else if (key == "class.mu2") cls.mu2 = parse_double(v);
            else if (key == "class.p") cls.p = parse_p(v);
            else if (key == "noise.source") noise = parse_noise_source(v);
            else if (key == "noise.deltas") deltas = v.empty() ? std::vector<double>{} : parse_double_list(v);
            else if (key == "noise.h") hs = v.empty() ? std::vector<double>{} : parse_double_list(v);
            else if (key == "noise.mode") mode = parse_noise_mode(v);
            else if (key == "noise.seeds") seeds = static_cast<int>(parse_integer(v));
            else if (key == "noise.first_seed") first_seed = static_cast<std::uint64_t>(parse_integer(v));
            else if (key == "noise.trapezoid_kernel") {
                if (v != "auto" && v != "generic") throw std::invalid_argument("expected auto or generic");
                generic_trapezoid = v == "generic";
            }
            else if (key == "method.n") n_values = v.empty() ? std::vector<int>{} : parse_int_list(v);
            else if (key == "method.choose_n") use_choose_n = parse_bool(v);
            else if (key == "method.c") c = parse_double(v);
            else if (key == "method.gamma") gamma = (v == "auto") ? std::nullopt : std::optional<double>(parse_double(v));
            else if (key == "method.metric") metric = parse_metric(v);
            else if (key == "output.grid_points") grid_points = static_cast<int>(parse_integer(v));
            else if (key == "output.root") output_root = v;
            else throw std::invalid_argument("unknown key");
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config key '" + key + "' = '" + v + "': " + e.what());
        }
    }
    // A new h list without its own deltas drops the stale default pairing.
    if (kv.contains("noise.h") && !kv.contains("noise.deltas") && noise == NoiseSource::trapezoid &&
        deltas.size() != hs.size())
        deltas.clear();
}

ExperimentConfig default_config(const std::string& command, NoiseSource noise) {
    ExperimentConfig cfg;
    cfg.command = command;
    cfg.output_root = default_output_root();
    if (command == "example1") {
        cfg.function_id = "example1";
        cfg.cls = {2.0, 5.6, 5.6, 2.0, 1e-7};
        cfg.noise = noise;
        cfg.gamma = 1.0;
        cfg.deltas = {1e-7, 1e-8, 1e-9};
        if (noise == NoiseSource::random) {
            cfg.cls.p = kInfinity;
            cfg.n_values = {16, 25, 28};
            cfg.run_id = "example1_random";
        } else {
            cfg.hs = {1e-4, 8e-5, 4e-5};
            cfg.n_values = {16, 22, 28};
            cfg.run_id = "example1_trapezoid";
        }
    } else if (command == "example2") {
        cfg.function_id = "example2";
        cfg.cls = {2.0, 5.4, 5.4, 2.0, 1e-7};
        cfg.noise = NoiseSource::trapezoid;
        cfg.gamma = 1.0;
        cfg.deltas = {1e-7, 1e-8, 1e-9};
        cfg.hs = {8e-5, 2e-5, 8e-6};
        cfg.n_values = {19, 31, 43};
        cfg.run_id = "example2";
    } else if (command == "rate-study") {
        cfg.function_id = "class_s2_mu5.6";
        cfg.cls = {2.0, 5.6, 5.6, 2.0, 1e-7};
        cfg.deltas = {1e-5, 1e-6, 1e-7, 1e-8, 1e-9};
        cfg.gamma = std::nullopt;
        cfg.run_id = "rate_study";
    } else {
        throw std::invalid_argument("unknown command '" + command + "'");
    }
    return cfg;
}

KeyValues parse_config_text(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        kv[section.empty() || key.find('.') != std::string::npos ? key : section + "." + key] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void write_config_file(const ExperimentConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    std::string section;
    for (const auto& [key, value] : config.to_key_values()) {
        const auto dot = key.find('.');
        const std::string sec = key.substr(0, dot);
        if (sec != section) {
            if (!section.empty()) out << '\n';
            out << '[' << sec << "]\n";
            section = sec;
        }
        out << key.substr(dot + 1) << " = " << value << '\n';
    }
}

std::filesystem::path default_output_root() {
    if (const char* env = std::getenv("HCDERIV_OUTPUT_ROOT"); env && *env) return env;
    return "runs";
}

}  // namespace hcd
