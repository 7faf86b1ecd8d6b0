#include "somlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ctime>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "somlab/errors.hpp"
#include "somlab/io.hpp"
#include "somlab/potential.hpp"

namespace somlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string echo_comment(const ExperimentConfig& config) {
    std::istringstream in(config.echo());
    std::string line, out;
    while (std::getline(in, line)) out += "# " + line + "\n";
    return out;
}

NetworkState make_initial_state(const ExperimentConfig& config, Rng& rng) {
    NetworkState state(config.topology, config.distribution.dimension());
    auto lo = config.distribution.support_lo();
    auto hi = config.distribution.support_hi();
    if (config.init == InitMode::ordered)
        init_ordered(state, lo, hi);
    else
        init_random_box(state, lo, hi, rng);
    return state;
}

double run_lambda(const ExperimentConfig& config) {
    switch (config.rule.rule) {
        case LearningRule::gwrk:
            return config.rule.lambda;
        case LearningRule::som:
            return 0.0;
        case LearningRule::vq:
            return kNaN;
    }
    return kNaN;
}

std::string snapshot_name(int replicate, std::uint64_t step) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "rep%03d_step%012llu.txt", replicate,
                  static_cast<unsigned long long>(step));
    return buf;
}

}  // namespace

RunRow run_replicate_traj(const ExperimentConfig& config, double lambda, int lambda_index, int replicate,
                          Trajectory* traj_out) {
    RunRow row;
    row.replicate = replicate;
    row.seed = derive_seed(config.seed, static_cast<std::uint64_t>(lambda_index),
                           static_cast<std::uint64_t>(replicate));
    Rng rng(row.seed);

    TrainingRun run{make_initial_state(config, rng), config.schedule, config.rule,
                    row.seed,  config.snapshot_every,               config.kernel_mode,
                    config.truncation_radius};
    if (config.rule.rule == LearningRule::gwrk) run.rule.lambda = lambda;
    row.lambda = config.rule.rule == LearningRule::vq ? kNaN : lambda;
    row.theoretical = (config.rule.rule != LearningRule::vq && std::abs(lambda) <= 1.0)
                          ? theoretical_exponent(lambda)
                          : kNaN;

    Trajectory traj = train(std::move(run), config.distribution);

    const bool one_d = config.topology.dims() == 1 && config.distribution.dimension() == 1;
    if (one_d) {
        row.ordering_step = ordering_time(traj);
        try {
            row.fit = estimate_exponent(traj.final_state, config.distribution, config.resolved_trim());
        } catch (const Error& e) {
            row.fit_error = e.what();
        }
    } else {
        row.fit_error = "exponent estimation is defined for 1-D maps of 1-D inputs";
    }

    Rng probe_rng(splitmix64(row.seed ^ 0xF1F1F1F1F1F1F1F1ull));
    std::int64_t probes = std::max<std::int64_t>(config.probes, 10 * config.topology.neuron_count());
    row.firing_entropy_nats = firing_entropy(traj.final_state, config.distribution, probes, probe_rng).entropy;
    if (traj_out) *traj_out = std::move(traj);
    return row;
}

RunRow run_replicate(const ExperimentConfig& config, double lambda, int lambda_index, int replicate) {
    return run_replicate_traj(config, lambda, lambda_index, replicate, nullptr);
}

std::string rows_to_csv(const ExperimentConfig& config, const std::vector<RunRow>& rows) {
    std::string out = echo_comment(config);
    out += "lambda,replicate,fitted_exponent,stderr,r_squared,theoretical_exponent,"
           "firing_entropy_nats,ordering_step,seed\n";
    for (const auto& row : rows) {
        out += format_double(row.lambda);
        out += ',' + std::to_string(row.replicate);
        if (row.fit) {
            out += ',' + format_double(row.fit->slope);
            out += ',' + format_double(row.fit->stderr_slope);
            out += ',' + format_double(row.fit->r_squared);
        } else {
            out += ",nan,nan,nan";
        }
        out += ',' + format_double(row.theoretical);
        out += ',' + format_double(row.firing_entropy_nats);
        out += ',' + (row.ordering_step ? std::to_string(*row.ordering_step) : std::string("nan"));
        out += ',' + std::to_string(row.seed);
        out += '\n';
    }
    return out;
}

namespace {

void write_meta(const ExperimentConfig& config, const std::filesystem::path& out,
                const std::string& command) {
    nlohmann::json meta;
    meta["command"] = command;
    meta["config"] = nlohmann::json::object();
    std::istringstream in(config.echo());
    std::string line, section;
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() == '[') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find(" = ");
        if (eq != std::string::npos)
            meta["config"][section + "." + line.substr(0, eq)] = line.substr(eq + 3);
    }
    // Timestamps live only here, never in the primary outputs, so result
    // files stay byte-comparable across runs.
    meta["generated_unix_time"] = static_cast<std::int64_t>(::time(nullptr));
    write_text_file(out / "meta.json", meta.dump(2) + "\n");
}

void write_trajectory_snapshots(const Trajectory& traj, const std::filesystem::path& out, int replicate,
                                int input_dim) {
    for (const auto& snap : traj.snapshots)
        write_snapshot(out / snapshot_name(replicate, snap.step), snap.step, snap.weights, input_dim);
}

}  // namespace

std::vector<RunRow> run_single(const ExperimentConfig& config, const std::filesystem::path& out) {
    std::vector<RunRow> rows;
    double lambda = run_lambda(config);
    for (int k = 0; k < config.replicates; ++k) {
        Trajectory traj{{}, NetworkState(config.topology, config.distribution.dimension())};
        RunRow row = run_replicate_traj(config, std::isnan(lambda) ? 0.0 : lambda, 0, k, &traj);
        write_trajectory_snapshots(traj, out, k, config.distribution.dimension());
        rows.push_back(std::move(row));
    }
    write_text_file(out / "result.csv", rows_to_csv(config, rows));
    write_meta(config, out, "train");

    for (const auto& row : rows)
        if (!row.fit && !row.fit_error.empty() && config.topology.dims() == 1 &&
            config.distribution.dimension() == 1)
            throw Error("replicate " + std::to_string(row.replicate) +
                        " analysis failed: " + row.fit_error);
    return rows;
}

SweepResult run_sweep(const ExperimentConfig& config, const std::vector<double>& lambdas,
                      const std::filesystem::path& out, int jobs) {
    if (lambdas.empty()) throw ConfigError("sweep requires at least one lambda value");
    for (double l : lambdas)
        if (std::abs(l) > 1.0 && !config.rule.allow_unstable_lambda)
            throw ConfigError("sweep lambda " + format_double(l) +
                              " outside [-1, 1]; pass --allow-unstable-lambda to override");

    ExperimentConfig sweep_config = config;
    sweep_config.rule.rule = LearningRule::gwrk;

    SweepResult result;
    result.lambdas = lambdas;
    const int reps = config.replicates;
    const int total = static_cast<int>(lambdas.size()) * reps;
    result.rows.resize(static_cast<std::size_t>(total));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int task = next.fetch_add(1);
            if (task >= total) return;
            int j = task / reps, k = task % reps;
            result.rows[static_cast<std::size_t>(task)] = run_replicate(sweep_config, lambdas[static_cast<std::size_t>(j)], j, k);
        }
    };
    int nthreads = std::max(1, std::min(jobs, total));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    write_text_file(out / "sweep.csv", rows_to_csv(sweep_config, result.rows));
    write_text_file(out / "sweep_summary.csv", sweep_summary_csv(sweep_config, result));
    write_meta(sweep_config, out, "sweep");
    return result;
}

std::string sweep_summary_csv(const ExperimentConfig& config, const SweepResult& sweep) {
    std::string out = echo_comment(config);
    out += "lambda,valid_replicates,mean_fitted_exponent,sd_fitted_exponent,pooled_stderr,"
           "theoretical_exponent,mean_firing_entropy_nats,mean_ordering_step\n";
    const int reps = config.replicates;
    for (std::size_t j = 0; j < sweep.lambdas.size(); ++j) {
        double lambda = sweep.lambdas[j];
        std::vector<const RunRow*> rows;
        for (int k = 0; k < reps; ++k) rows.push_back(&sweep.rows[j * static_cast<std::size_t>(reps) + static_cast<std::size_t>(k)]);
        int valid = 0;
        double mean = 0.0, entropy = 0.0, stderr_sq = 0.0;
        double ord_sum = 0.0;
        int ord_n = 0;
        for (auto* r : rows) {
            entropy += r->firing_entropy_nats;
            if (r->fit) {
                ++valid;
                mean += r->fit->slope;
                stderr_sq += r->fit->stderr_slope * r->fit->stderr_slope;
            }
            if (r->ordering_step) {
                ord_sum += static_cast<double>(*r->ordering_step);
                ++ord_n;
            }
        }
        entropy /= rows.size();
        double sd = kNaN, pooled = kNaN;
        if (valid > 0) {
            mean /= valid;
            pooled = std::sqrt(stderr_sq / valid);
            if (valid > 1) {
                double var = 0.0;
                for (auto* r : rows)
                    if (r->fit) var += (r->fit->slope - mean) * (r->fit->slope - mean);
                sd = std::sqrt(var / (valid - 1));
            }
        } else {
            mean = kNaN;
        }
        double theo = std::abs(lambda) <= 1.0 ? theoretical_exponent(lambda) : kNaN;
        out += format_double(lambda);
        out += ',' + std::to_string(valid);
        out += ',' + format_double(mean);
        out += ',' + format_double(sd);
        out += ',' + format_double(pooled);
        out += ',' + format_double(theo);
        out += ',' + format_double(entropy);
        out += ',' + (ord_n > 0 ? format_double(ord_sum / ord_n) : "nan");
        out += '\n';
    }
    return out;
}

namespace {

/// Random discrete instance for the gradient check: a short chain in 1-D
/// input space with well-separated stimuli. Retries until the margin
/// guard holds.
struct GradientInstance {
    NetworkState state;
    StimulusDistribution stimuli;
    double margin;
};

GradientInstance make_gradient_instance(std::uint64_t seed) {
    Rng rng(seed);
    const int n = 6, m = 12;
    for (int attempt = 0; attempt < 256; ++attempt) {
        NetworkState state(LatticeTopology::chain(n), 1);
        for (int r = 0; r < n; ++r) state.weight(r)[0] = rng.uniform();
        std::vector<std::vector<double>> pts;
        std::vector<double> probs;
        for (int mu = 0; mu < m; ++mu) {
            pts.push_back({rng.uniform()});
            probs.push_back(0.2 + rng.uniform());
        }
        auto stimuli = StimulusDistribution::discrete(std::move(pts), std::move(probs));
        auto part = voronoi_partition(state, stimuli);
        if (part.boundary_margin > 1e-3)
            return {std::move(state), std::move(stimuli), part.boundary_margin};
    }
    throw Error("failed to draw a discrete instance passing the margin guard");
}

}  // namespace

PotentialCheckReport run_potential_check(const ExperimentConfig& config, const std::filesystem::path& out) {
    if (!config.distribution.is_discrete())
        throw ConfigError("potential-check requires a discrete distribution in the config");
    PotentialCheckReport report;
    const double gamma_kernel = config.schedule.gamma_end;
    NeighborhoodKernel kernel = NeighborhoodKernel::exact(gamma_kernel);

    // instance 0: the configured discrete set against the configured map box
    {
        Rng rng(derive_seed(config.seed, 0, 0));
        NetworkState state(config.topology, config.distribution.dimension());
        auto lo = config.distribution.support_lo();
        auto hi = config.distribution.support_hi();
        init_random_box(state, lo, hi, rng);
        PotentialCheckRow row;
        row.instance = 0;
        row.margin = voronoi_partition(state, config.distribution).boundary_margin;
        row.note = "configured instance";
        try {
            row.err_lambda_half = gradient_check(state, config.distribution, kernel, 0.5);
            row.err_lambda_zero = gradient_check(state, config.distribution, kernel, 0.0);
        } catch (const BorderCrossingError& e) {
            row.err_lambda_half = row.err_lambda_zero = kNaN;
            row.note = e.what();
        }
        report.rows.push_back(std::move(row));
    }

    // 20 random instances
    for (int i = 1; i <= 20; ++i) {
        auto inst = make_gradient_instance(derive_seed(config.seed, 1, static_cast<std::uint64_t>(i)));
        PotentialCheckRow row;
        row.instance = i;
        row.margin = inst.margin;
        row.err_lambda_half = gradient_check(inst.state, inst.stimuli, kernel, 0.5);
        row.err_lambda_zero = gradient_check(inst.state, inst.stimuli, kernel, 0.0);
        report.rows.push_back(std::move(row));
    }

    // discontinuity witness: drag one weight across a Voronoi border
    {
        NetworkState state(LatticeTopology::chain(3), 1);
        state.weight(0)[0] = 0.0;
        state.weight(1)[0] = 1.0;
        state.weight(2)[0] = 2.0;
        auto stimuli = StimulusDistribution::discrete({{0.1}, {0.9}, {1.7}}, {1.0, 1.0, 1.0});
        // stimulus 0.9 transfers between neurons 0 and 1 when w0 = 0.8
        auto V = [&](double w0) {
            NetworkState probe = state;
            probe.weight(0)[0] = w0;
            return wrk_potential(probe, stimuli, kernel).value;
        };
        const double h = 1e-7;
        const double crossing = 0.8;
        double left = (V(crossing - h) - V(crossing - 2 * h)) / h;
        double right = (V(crossing + 2 * h) - V(crossing + h)) / h;
        double jump_mismatch = std::abs(right - left);
        // smooth-region reference: same one-sided stencils far from any border
        double smooth_left = (V(0.3) - V(0.3 - h)) / h;
        double smooth_right = (V(0.3 + h) - V(0.3)) / h;
        double smooth_err = std::abs(smooth_right - smooth_left);
        report.discontinuity_ratio = jump_mismatch / std::max(smooth_err, 1e-300);
    }

    // kappa-expansion truncation error scaling: ring of cities, neurons
    // displaced from the cities proportionally to kappa (the end-phase
    // scaling), error |V_wrk - V_tsp| fitted against kappa
    {
        const int m = 12;
        std::vector<std::vector<double>> cities;
        for (int i = 0; i < m; ++i) {
            double phi = 2.0 * M_PI * i / m;
            cities.push_back({std::cos(phi), std::sin(phi)});
        }
        auto dist = StimulusDistribution::discrete(cities, std::vector<double>(m, 1.0));
        report.kappa_values = {0.2, 0.1, 0.05, 0.025};
        for (double kappa : report.kappa_values) {
            NetworkState state(LatticeTopology::ring(m), 2);
            for (int r = 0; r < m; ++r) {
                // radial-inward offset proportional to kappa
                state.weight(r)[0] = cities[static_cast<std::size_t>(r)][0] * (1.0 - 0.4 * kappa);
                state.weight(r)[1] = cities[static_cast<std::size_t>(r)][1] * (1.0 - 0.4 * kappa);
            }
            auto k = NeighborhoodKernel::from_kappa(kappa);
            double vw = wrk_potential(state, dist, k).value;
            double vt = tsp_limit_energy(state, dist, kappa);
            report.kappa_errors.push_back(std::abs(vw - vt));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(report.kappa_values.size());
        for (int i = 0; i < n; ++i) {
            double x = std::log(report.kappa_values[static_cast<std::size_t>(i)]);
            double y = std::log(report.kappa_errors[static_cast<std::size_t>(i)]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        report.kappa_scaling_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }

    // emit
    std::string csv = echo_comment(config);
    csv += "instance,margin,err_lambda_half,err_lambda_zero,note\n";
    for (const auto& row : report.rows) {
        csv += std::to_string(row.instance);
        csv += ',' + format_double(row.margin);
        csv += ',' + format_double(row.err_lambda_half);
        csv += ',' + format_double(row.err_lambda_zero);
        csv += ',' + row.note + '\n';
    }
    write_text_file(out / "potential_check.csv", csv);

    std::string txt;
    txt += "discontinuity_ratio = " + format_double(report.discontinuity_ratio) + "\n";
    txt += "kappa_scaling_exponent = " + format_double(report.kappa_scaling_exponent) + "\n";
    for (std::size_t i = 0; i < report.kappa_values.size(); ++i)
        txt += "kappa " + format_double(report.kappa_values[i]) + " truncation_error " +
               format_double(report.kappa_errors[i]) + "\n";
    write_text_file(out / "potential_check.txt", txt);
    write_meta(config, out, "potential-check");
    return report;
}

std::vector<SnapshotAnalysisRow> analyze_snapshots(const ExperimentConfig& config,
                                                   const std::filesystem::path& snapshot_dir,
                                                   const std::filesystem::path& out) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(snapshot_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".txt" &&
            entry.path().filename().string().rfind("rep", 0) == 0)
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error("no snapshot files (rep*.txt) found in " + snapshot_dir.string());

    std::vector<SnapshotAnalysisRow> rows;
    for (const auto& f : files) {
        SnapshotFile snap = read_snapshot(f);
        SnapshotAnalysisRow row;
        row.file = f.filename().string();
        row.step = snap.step;
        std::vector<double> flat;
        for (const auto& w : snap.weights) flat.insert(flat.end(), w.begin(), w.end());
        if (snap.input_dim == 1) {
            auto rep = ordering_report_weights(flat);
            row.defects = rep.defects;
            row.is_ordered = rep.is_ordered;
            NetworkState state(LatticeTopology::chain(static_cast<int>(snap.weights.size())), 1);
            state.raw_weights() = flat;
            try {
                row.fit = estimate_exponent(state, config.distribution, config.resolved_trim());
            } catch (const Error& e) {
                row.fit_error = e.what();
            } catch (const std::exception& e) {
                row.fit_error = e.what();
            }
        } else {
            row.fit_error = "analysis is defined for 1-D snapshots";
        }
        rows.push_back(std::move(row));
    }

    std::string csv = echo_comment(config);
    csv += "file,step,defects,is_ordered,fitted_exponent,stderr,r_squared\n";
    for (const auto& row : rows) {
        csv += row.file;
        csv += ',' + std::to_string(row.step);
        csv += ',' + std::to_string(row.defects);
        csv += ',' + std::string(row.is_ordered ? "true" : "false");
        if (row.fit) {
            csv += ',' + format_double(row.fit->slope);
            csv += ',' + format_double(row.fit->stderr_slope);
            csv += ',' + format_double(row.fit->r_squared);
        } else {
            csv += ",nan,nan,nan";
        }
        csv += '\n';
    }
    write_text_file(out / "analysis.csv", csv);
    write_meta(config, out, "analyze");
    return rows;
}

}  // namespace somlab
