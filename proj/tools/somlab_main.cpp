#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "somlab/config.hpp"
#include "somlab/errors.hpp"
#include "somlab/experiment.hpp"
#include "somlab/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

somlab::ExperimentConfig load_config(const std::string& path, bool allow_unstable, const std::string& out,
                                     std::uint64_t seed, bool seed_set) {
    auto cfg = somlab::parse_config(somlab::read_text_file(path), allow_unstable);
    if (!out.empty()) cfg.output_path = out;
    if (seed_set) cfg.seed = seed;
    return cfg;
}

std::vector<double> parse_lambda_list(const std::string& text) {
    std::vector<double> out;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) return;
        std::size_t pos = 0;
        double v = std::stod(cur, &pos);
        if (pos != cur.size()) throw somlab::ConfigError("bad lambda value '" + cur + "'");
        out.push_back(v);
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') flush();
        else if (!isspace(static_cast<unsigned char>(c))) cur.push_back(c);
    }
    flush();
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"somlab: self-organizing map training and magnification-law analysis"};
    app.require_subcommand(1);

    bool allow_unstable = false;
    app.add_flag("--allow-unstable-lambda", allow_unstable,
                 "permit lambda outside the serial stability window [-1, 1]");

    std::string config_path, out_dir, lambdas_text, snapshots_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file path")->required();
        cmd->add_option("--out", out_dir, "output directory (overrides output.path)");
        cmd->add_option("--seed", seed, "master seed (overrides run.seed)")
            ->each([&](const std::string&) { seed_set = true; });
    };

    auto* train_cmd = app.add_subcommand("train", "train replicates and analyze the final states");
    add_common(train_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "replicated runs across a list of lambda values");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--lambdas", lambdas_text, "comma-separated lambda values")->required();
    sweep_cmd->add_option("--jobs", jobs, "concurrent workers (default 1)");

    auto* potential_cmd = app.add_subcommand("potential-check", "gradient-check error table and witnesses");
    add_common(potential_cmd);

    auto* analyze_cmd = app.add_subcommand("analyze", "re-run analysis on stored snapshots");
    add_common(analyze_cmd);
    analyze_cmd->add_option("--snapshots", snapshots_dir, "directory holding rep*.txt snapshots")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        somlab::ExperimentConfig cfg = load_config(config_path, allow_unstable, out_dir, seed, seed_set);
        std::string out = cfg.output_path;

        if (train_cmd->parsed()) {
            auto rows = somlab::run_single(cfg, out);
            std::printf("wrote %s/result.csv (%zu rows)\n", out.c_str(), rows.size());
        } else if (sweep_cmd->parsed()) {
            auto lambdas = parse_lambda_list(lambdas_text);
            auto result = somlab::run_sweep(cfg, lambdas, out, jobs);
            std::printf("wrote %s/sweep.csv (%zu rows) and %s/sweep_summary.csv\n", out.c_str(),
                        result.rows.size(), out.c_str());
        } else if (potential_cmd->parsed()) {
            auto report = somlab::run_potential_check(cfg, out);
            std::printf("wrote %s/potential_check.csv (%zu instances)\n", out.c_str(), report.rows.size());
            std::printf("discontinuity_ratio = %s\n", somlab::format_double(report.discontinuity_ratio).c_str());
            std::printf("kappa_scaling_exponent = %s\n",
                        somlab::format_double(report.kappa_scaling_exponent).c_str());
        } else if (analyze_cmd->parsed()) {
            auto rows = somlab::analyze_snapshots(cfg, snapshots_dir, out);
            std::printf("wrote %s/analysis.csv (%zu rows)\n", out.c_str(), rows.size());
        }
        return kExitOk;
    } catch (const somlab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}
