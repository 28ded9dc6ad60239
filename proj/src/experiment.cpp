#include "hcd/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "hcd/corpus.hpp"
#include "hcd/format.hpp"

namespace hcd {

namespace fs = std::filesystem;

namespace {

constexpr const char* kResultsHeader = "delta,h,n,gamma,error_l2,error_c,card,coeff_error,trials,wall_time";

fs::path approx_path(const fs::path& dir, std::size_t row) {
    return dir / ("approx_row" + std::to_string(row) + ".csv");
}

fs::path prepare_run_directory(const ExperimentConfig& config) {
    const fs::path dir = run_directory(config);
    fs::create_directories(dir);
    write_config_file(config, dir / "config.ini");
    return dir;
}

struct RowOutcome {
    ResultsRow row;
    ApproxDerivative approx;
    std::uint64_t seed = 0;
};

RowOutcome run_row(const ExperimentConfig& cfg, const TestFunction& fn, std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    RowOutcome out;
    ResultsRow& row = out.row;
    row.delta = cfg.deltas.empty() ? 0.0 : cfg.deltas[i];
    row.h = cfg.noise == NoiseSource::trapezoid ? cfg.hs[i] : 0.0;

    SmoothnessParams at = cfg.cls;
    if (row.delta > 0.0) at.delta = row.delta;
    row.n = cfg.use_choose_n ? choose_n(at, cfg.r, cfg.c, cfg.axis) : cfg.n_values[i];
    row.gamma = cfg.gamma ? *cfg.gamma : choose_gamma(at, cfg.r, cfg.metric, cfg.axis);

    const MethodParams params{row.n, row.gamma, cfg.r, cfg.axis};
    const CrossSet cross = build_cross(row.n, row.gamma, cfg.r, cfg.axis);
    row.card = cross.size();
    const DerivOperator op = derivative_operator(std::max(row.n, 1), cfg.r);
    const ErrorEvaluator eval(fn, cfg.r, cfg.axis, l2_quad_nodes(fn, row.n), cfg.grid_points);

    if (cfg.noise == NoiseSource::random) {
        const CoeffGrid exact = exact_coeffs(fn, std::max(cross.max_k(), 0), std::max(cross.max_j(), 0));
        if (row.delta == 0.0) {
            out.approx = truncate(exact, params, op);
            row.error_l2 = eval.l2(out.approx);
            row.error_c = eval.c(out.approx);
            row.trials = 1;
        } else {
            std::vector<double> l2s, cs;
            for (int s = 0; s < cfg.seeds; ++s) {
                const std::uint64_t seed = cfg.first_seed + static_cast<std::uint64_t>(s);
                const NoiseSpec spec{row.delta, cfg.cls.p, cfg.mode, seed};
                ApproxDerivative approx = truncate(add_noise(exact, spec, cross.indices), params, op);
                l2s.push_back(eval.l2(approx));
                cs.push_back(eval.c(approx));
                if (s == 0) {
                    out.approx = std::move(approx);
                    out.seed = seed;
                }
            }
            row.error_l2 = median(l2s);
            row.error_c = median(cs);
            row.trials = cfg.seeds;
        }
    } else {
        // Full square of trapezoid coefficients, the cross filter is applied by truncate.
        const CoeffGrid grid = trapezoid_coeffs(fn, row.n, row.n, row.h, cfg.generic_trapezoid);
        row.coeff_error = lp_norm_difference(grid, exact_coeffs(fn, row.n, row.n), kInfinity);
        out.approx = truncate(grid, params, op);
        row.error_l2 = eval.l2(out.approx);
        row.error_c = eval.c(out.approx);
        row.trials = 1;
    }
    row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::string csv_row(const ResultsRow& r) {
    return format_number(r.delta) + ',' + format_number(r.h) + ',' + std::to_string(r.n) + ',' +
           format_number(r.gamma) + ',' + format_number(r.error_l2) + ',' + format_number(r.error_c) + ',' +
           std::to_string(r.card) + ',' + format_number(r.coeff_error) + ',' + std::to_string(r.trials) + ',' +
           format_number(r.wall_time);
}

}  // namespace

fs::path run_directory(const ExperimentConfig& config) { return config.output_root / config.run_id; }

void write_results_csv(const ResultsTable& table, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << kResultsHeader << '\n';
    for (const auto& row : table.rows) out << csv_row(row) << '\n';
}

ResultsTable read_results_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || trim(line) != kResultsHeader)
        throw std::runtime_error(path.string() + ": unexpected header");
    ResultsTable table;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 10) throw std::runtime_error(path.string() + ": malformed row '" + line + "'");
        ResultsRow r;
        r.delta = parse_double(f[0]);
        r.h = parse_double(f[1]);
        r.n = static_cast<int>(parse_integer(f[2]));
        r.gamma = parse_double(f[3]);
        r.error_l2 = parse_double(f[4]);
        r.error_c = parse_double(f[5]);
        r.card = static_cast<std::size_t>(parse_integer(f[6]));
        r.coeff_error = parse_double(f[7]);
        r.trials = static_cast<int>(parse_integer(f[8]));
        r.wall_time = parse_double(f[9]);
        table.rows.push_back(r);
    }
    return table;
}

ResultsTable run_table(const ExperimentConfig& config, bool write) {
    config.validate();
    if (config.command == "rate-study") throw std::invalid_argument("run_table: use run_rate_study for rate studies");
    const TestFunction fn = find_function(config.function_id);
    const std::size_t rows = config.noise == NoiseSource::random ? config.deltas.size() : config.hs.size();

    fs::path dir;
    if (write) dir = prepare_run_directory(config);

    ResultsTable table;
    for (std::size_t i = 0; i < rows; ++i) {
        RowOutcome outcome = run_row(config, fn, i);
        if (write) {
            KeyValues extra{{"n", std::to_string(outcome.row.n)},
                            {"gamma", format_number(outcome.row.gamma)},
                            {"r", std::to_string(config.r)},
                            {"axis", to_string(config.axis)},
                            {"space", "derivative"},
                            {"trial_seed", std::to_string(outcome.seed)}};
            write_coeff_grid(outcome.approx.coeffs, approx_path(dir, i), extra);
        }
        table.rows.push_back(outcome.row);
    }
    if (write) {
        write_results_csv(table, dir / "results.csv");
        write_key_values({{"command", config.command},
                          {"function", config.function_id},
                          {"r", std::to_string(config.r)},
                          {"axis", to_string(config.axis)},
                          {"noise", to_string(config.noise)},
                          {"rows", std::to_string(rows)}},
                         dir / "results.meta");
    }
    return table;
}

void write_rate_study_csv(const RateStudyResult& result, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "delta,n,gamma,error_l2,error_c,seed\n";
    for (const auto& t : result.trials)
        out << format_number(t.delta) << ',' << t.n << ',' << format_number(t.gamma) << ','
            << format_number(t.error_l2) << ',' << format_number(t.error_c) << ',' << t.seed << '\n';
    out << "# summary metric=" << to_string(result.metric) << " fitted_slope=" << format_number(result.fitted_slope)
        << " theoretical_slope=" << format_number(result.theoretical_slope) << '\n';
}

RateStudyResult run_rate_study(const ExperimentConfig& config, bool write) {
    config.validate();
    if (config.command != "rate-study") throw std::invalid_argument("run_rate_study: config is not a rate study");
    const TestFunction fn = find_function(config.function_id);
    RateStudyOptions opts;
    opts.c = config.c;
    opts.axis = config.axis;
    opts.gamma = config.gamma;
    opts.first_seed = config.first_seed;
    opts.mode = config.mode;
    opts.grid_points = config.grid_points;
    RateStudyResult result = rate_study(fn, config.cls, config.r, config.metric, config.deltas, config.seeds, opts);
    if (write) {
        const fs::path dir = prepare_run_directory(config);
        write_rate_study_csv(result, dir / "rate_study.csv");
        KeyValues summary{{"metric", to_string(result.metric)},
                          {"fitted_slope", format_number(result.fitted_slope)},
                          {"theoretical_slope", format_number(result.theoretical_slope)}};
        for (std::size_t i = 0; i < result.deltas.size(); ++i)
            summary["median_error_" + std::to_string(i)] =
                format_number(result.deltas[i]) + ',' + format_number(result.errors[i]);
        write_key_values(summary, dir / "summary.meta");
    }
    return result;
}

CrossCardResult run_cross_card(const std::vector<double>& gammas, int r, const std::vector<int>& n_list) {
    if (gammas.empty()) throw std::invalid_argument("cross-card: need at least one gamma");
    if (n_list.empty()) throw std::invalid_argument("cross-card: need at least one n");
    CrossCardResult result;
    for (double gamma : gammas) {
        std::vector<double> per_n, per_nlogn;
        for (const auto& row : cardinality_growth(gamma, r, n_list)) {
            const double n = row.n;
            const double card = static_cast<double>(row.card);
            const double nlogn = n * std::log(n);
            result.rows.push_back({gamma, row.n, row.card, card / n, nlogn > 0.0 ? card / nlogn : 0.0});
            per_n.push_back(card / n);
            per_nlogn.push_back(nlogn > 0.0 ? card / nlogn : 0.0);
        }
        std::string verdict = "gamma=" + format_number(gamma) + ": ";
        if (n_list.size() < 2) {
            verdict += "insufficient data";
        } else {
            const bool log_growth = gamma == 1.0;
            const double band = band_width(log_growth ? per_nlogn : per_n);
            verdict += std::string(log_growth ? "card ≍ n ln n" : "card ≍ n") + ": " + (band < 2.0 ? "PASS" : "FAIL") +
                       " (max/min ratio " + format_number(band) + ")";
        }
        result.verdicts.push_back(verdict);
    }
    return result;
}

void write_cross_card_csv(const CrossCardResult& result, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "gamma,n,card,card_over_n,card_over_nlogn\n";
    for (const auto& row : result.rows)
        out << format_number(row.gamma) << ',' << row.n << ',' << row.card << ',' << format_number(row.per_n) << ','
            << format_number(row.per_n_log_n) << '\n';
    for (const auto& v : result.verdicts) out << "# " << v << '\n';
}

fs::path emit_surface(const fs::path& output_root, const std::string& run_id, int row, int grid_points,
                      const fs::path& out) {
    const fs::path dir = output_root / run_id;
    if (run_id.empty() || !fs::exists(dir / "results.meta"))
        throw std::invalid_argument("no finished run '" + run_id + "' under " + output_root.string());
    if (row < 0) throw std::invalid_argument("row index must be >= 0");
    const fs::path grid_file = approx_path(dir, static_cast<std::size_t>(row));
    if (!fs::exists(grid_file))
        throw std::invalid_argument("run '" + run_id + "' has no row " + std::to_string(row));

    const KeyValues meta = read_key_values(dir / "results.meta");
    const TestFunction fn = find_function(meta.at("function"));
    const int r = static_cast<int>(parse_integer(meta.at("r")));
    const Axis axis = parse_axis(meta.at("axis"));
    const CoeffGrid approx = read_coeff_grid(grid_file);

    const auto pts = uniform_points(grid_points);
    const Grid2D values = synthesize(approx, pts, pts);
    const Surface exact = fn.exact_deriv(r, axis);

    const fs::path target = out.empty() ? dir / ("surface_row" + std::to_string(row) + ".csv") : out;
    std::ofstream file(target);
    if (!file) throw std::runtime_error("cannot write " + target.string());
    file << "t,tau,exact,approx\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t m = 0; m < pts.size(); ++m)
            file << format_number(pts[i]) << ',' << format_number(pts[m]) << ',' << format_number(exact(pts[i], pts[m]))
                 << ',' << format_number(values(i, m)) << '\n';
    return target;
}

}  // namespace hcd
