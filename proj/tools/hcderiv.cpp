// Command-line experiment runner.
//
//   hcderiv example1 --noise {random|trapezoid} [overrides]
//   hcderiv example2 [overrides]
//   hcderiv rate-study [--config FILE] [overrides]
//   hcderiv cross-card --gamma 1,2 --r 1 --n 64,128,256,512
//   hcderiv emit-surface --run ID [--row I] [--points N]

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hcd/config.hpp"
#include "hcd/experiment.hpp"
#include "hcd/format.hpp"

namespace {

using hcd::KeyValues;

// Flags shared by the table and rate-study commands; each maps onto a config key.
struct Overrides {
    std::string config;
    KeyValues values;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config, "Config file (key = value with [sections])");
        add(cmd, "--function", "experiment.function", "Corpus function id");
        add(cmd, "--r", "experiment.r", "Derivative order");
        add(cmd, "--axis", "experiment.axis", "Derivative axis: t or tau");
        add(cmd, "--run-id", "experiment.run_id", "Run directory name");
        add(cmd, "--s", "class.s", "Class parameter s");
        add(cmd, "--mu", "class.mu", "Smoothness for both axes");
        add(cmd, "--mu1", "class.mu1", "Smoothness along t");
        add(cmd, "--mu2", "class.mu2", "Smoothness along tau");
        add(cmd, "--p", "class.p", "Noise norm p (number >= 1 or inf)");
        add(cmd, "--delta", "noise.deltas", "Comma-separated noise levels (0 = noise-free)");
        add(cmd, "--step", "noise.h", "Comma-separated trapezoid steps h");
        add(cmd, "--noise-mode", "noise.mode", "rescaled or raw_gaussian");
        add(cmd, "--seeds", "noise.seeds", "Seeds per noise level");
        add(cmd, "--first-seed", "noise.first_seed", "First seed");
        add(cmd, "--trapezoid-kernel", "noise.trapezoid_kernel", "auto or generic");
        add(cmd, "--n", "method.n", "Comma-separated truncation levels");
        add(cmd, "--gamma", "method.gamma", "Cross parameter gamma, or auto");
        add(cmd, "--c", "method.c", "Constant in the a-priori choice of n");
        add(cmd, "--metric", "method.metric", "L2 or C");
        add(cmd, "--points", "output.grid_points", "C-error grid points per axis");
        add(cmd, "--out-root", "output.root", "Output root (default $HCDERIV_OUTPUT_ROOT or ./runs)");
        cmd->add_flag_callback("--choose-n", [this] { values["method.choose_n"] = "true"; },
                               "Pick n from delta instead of the table values");
    }

    hcd::ExperimentConfig build(hcd::ExperimentConfig cfg) const {
        if (!config.empty()) cfg.apply(hcd::read_config_file(config));
        cfg.apply(values);
        return cfg;
    }

private:
    void add(CLI::App* cmd, const std::string& flag, const std::string& key, const std::string& help) {
        cmd->add_option_function<std::string>(flag, [this, key](const std::string& v) { values[key] = v; }, help);
    }
};

void print_table(const hcd::ResultsTable& table, const std::filesystem::path& dir) {
    std::cout << "delta,h,n,gamma,error_l2,error_c,card,coeff_error\n";
    for (const auto& r : table.rows)
        std::cout << hcd::format_number(r.delta) << ',' << hcd::format_number(r.h) << ',' << r.n << ','
                  << hcd::format_number(r.gamma) << ',' << hcd::format_number(r.error_l2) << ','
                  << hcd::format_number(r.error_c) << ',' << r.card << ',' << hcd::format_number(r.coeff_error) << '\n';
    std::cout << "results written to " << dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stable recovery of partial derivatives from noisy Fourier-Legendre coefficients"};
    app.require_subcommand(1);

    auto* ex1 = app.add_subcommand("example1", "Piecewise-polynomial example, random or trapezoid noise");
    std::string noise = "random";
    ex1->add_option("--noise", noise, "random or trapezoid")->check(CLI::IsMember({"random", "trapezoid"}));
    Overrides ex1_over;
    ex1_over.attach(ex1);

    auto* ex2 = app.add_subcommand("example2", "Polynomial x cosine example, trapezoid noise");
    Overrides ex2_over;
    ex2_over.attach(ex2);

    auto* rate = app.add_subcommand("rate-study", "Fit the error-vs-delta slope");
    Overrides rate_over;
    rate_over.attach(rate);

    auto* card = app.add_subcommand("cross-card", "Hyperbolic cross cardinality growth");
    std::string card_gamma = "1,2";
    std::string card_n = "64,128,256,512";
    int card_r = 1;
    std::string card_out;
    card->add_option("--gamma", card_gamma, "Comma-separated gamma values");
    card->add_option("--n", card_n, "Comma-separated increasing n values");
    card->add_option("--r", card_r, "Derivative order");
    card->add_option("--out", card_out, "CSV output path");

    auto* surf = app.add_subcommand("emit-surface", "Write t,tau,exact,approx grid for a finished run");
    std::string run_id;
    int row = 0;
    int points = 101;
    std::string surf_root;
    std::string surf_out;
    surf->add_option("--run", run_id, "Run id")->required();
    surf->add_option("--row", row, "Row of the results table");
    surf->add_option("--points", points, "Grid points per axis");
    surf->add_option("--out-root", surf_root, "Output root");
    surf->add_option("--out", surf_out, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*ex1 || *ex2) {
            auto cfg = *ex1 ? hcd::default_config("example1", hcd::parse_noise_source(noise))
                            : hcd::default_config("example2", hcd::NoiseSource::trapezoid);
            cfg = (*ex1 ? ex1_over : ex2_over).build(cfg);
            const auto table = hcd::run_table(cfg);
            print_table(table, hcd::run_directory(cfg));
        } else if (*rate) {
            const auto cfg = rate_over.build(hcd::default_config("rate-study"));
            const auto result = hcd::run_rate_study(cfg);
            std::cout << "delta,median_error\n";
            for (std::size_t i = 0; i < result.deltas.size(); ++i)
                std::cout << hcd::format_number(result.deltas[i]) << ',' << hcd::format_number(result.errors[i]) << '\n';
            std::cout << "metric=" << hcd::to_string(result.metric)
                      << " fitted_slope=" << hcd::format_number(result.fitted_slope)
                      << " theoretical_slope=" << hcd::format_number(result.theoretical_slope) << '\n';
            std::cout << "results written to " << hcd::run_directory(cfg).string() << '\n';
        } else if (*card) {
            std::vector<int> ns;
            for (long long n : hcd::parse_integer_list(card_n)) ns.push_back(static_cast<int>(n));
            const auto result = hcd::run_cross_card(hcd::parse_double_list(card_gamma), card_r, ns);
            std::filesystem::path out = card_out;
            if (out.empty()) {
                std::filesystem::create_directories(hcd::default_output_root());
                out = hcd::default_output_root() / "cross_card.csv";
            }
            hcd::write_cross_card_csv(result, out);
            std::cout << "gamma,n,card,card_over_n,card_over_nlogn\n";
            for (const auto& r : result.rows)
                std::cout << hcd::format_number(r.gamma) << ',' << r.n << ',' << r.card << ','
                          << hcd::format_number(r.per_n) << ',' << hcd::format_number(r.per_n_log_n) << '\n';
            for (const auto& v : result.verdicts) std::cout << v << '\n';
        } else if (*surf) {
            const std::filesystem::path root = surf_root.empty() ? hcd::default_output_root() : std::filesystem::path(surf_root);
            const auto path = hcd::emit_surface(root, run_id, row, points, surf_out);
            std::cout << "surface written to " << path.string() << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
