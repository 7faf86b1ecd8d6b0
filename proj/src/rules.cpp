#include "somlab/rules.hpp"

#include <cmath>
#include <stdexcept>

#include "somlab/errors.hpp"

namespace somlab {

namespace {

// Applies the plain kernel-weighted pull to every neuron (the Eq-of-motion
// shared by SOM and the GWRK non-winner rows). In lookup mode only the
// truncation window can contribute, so the loop is restricted to it.
void apply_som_updates(NetworkState& state, const NeighborhoodKernel& kernel, double eta,
                       std::span<const double> v, int winner) {
    const auto& topo = state.topology();
    const int dim = state.input_dim();
    auto update_row = [&](int r) {
        double g = kernel.value_at_sq(topo.squared_distance(r, winner));
        if (g == 0.0) return;
        auto w = state.weight(r);
        for (int d = 0; d < dim; ++d) w[d] += (eta * g) * (v[d] - w[d]);
    };
    if (kernel.mode() == NeighborhoodKernel::Mode::kappa_lookup) {
        topo.for_each_within(winner, kernel.truncation_radius(), update_row);
    } else {
        for (int r = 0; r < state.neuron_count(); ++r) update_row(r);
    }
}

void check_step_args(const NetworkState& state, double eta, std::span<const double> v) {
    if (static_cast<int>(v.size()) != state.input_dim())
        throw std::invalid_argument("stimulus dimension does not match network input dimension");
    if (!(eta >= 0.0) || !(eta <= 1.0)) throw std::invalid_argument("learning rate must lie in [0, 1]");
}

}  // namespace

void som_step(NetworkState& state, const NeighborhoodKernel& kernel, double eta, std::span<const double> v) {
    check_step_args(state, eta, v);
    int s = find_winner(state, v);
    apply_som_updates(state, kernel, eta, v, s);
    state.increment_step();
}

void gwrk_step(NetworkState& state, const NeighborhoodKernel& kernel, double eta, double lambda,
               std::span<const double> v) {
    if (lambda == 0.0) {
        som_step(state, kernel, eta, v);
        return;
    }
    check_step_args(state, eta, v);
    if (!std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite");
    const auto& topo = state.topology();
    const int dim = state.input_dim();
    int s = find_winner(state, v);

    // relaxing sum over pre-update weights
    std::vector<double> relax(static_cast<std::size_t>(dim), 0.0);
    auto accumulate = [&](int r) {
        if (r == s) return;
        double g = kernel.value_at_sq(topo.squared_distance(r, s));
        if (g == 0.0) return;
        auto w = state.weight(r);
        for (int d = 0; d < dim; ++d) relax[d] += g * (v[d] - w[d]);
    };
    if (kernel.mode() == NeighborhoodKernel::Mode::kappa_lookup) {
        topo.for_each_within(s, kernel.truncation_radius(), accumulate);
    } else {
        for (int r = 0; r < state.neuron_count(); ++r) accumulate(r);
    }

    // winner row from pre-update weights, then the usual pull elsewhere
    std::vector<double> winner_delta(static_cast<std::size_t>(dim));
    {
        auto ws = state.weight(s);
        for (int d = 0; d < dim; ++d) winner_delta[d] = eta * ((v[d] - ws[d]) - lambda * relax[d]);
    }
    auto update_row = [&](int r) {
        if (r == s) return;
        double g = kernel.value_at_sq(topo.squared_distance(r, s));
        if (g == 0.0) return;
        auto w = state.weight(r);
        for (int d = 0; d < dim; ++d) w[d] += (eta * g) * (v[d] - w[d]);
    };
    if (kernel.mode() == NeighborhoodKernel::Mode::kappa_lookup) {
        topo.for_each_within(s, kernel.truncation_radius(), update_row);
    } else {
        for (int r = 0; r < state.neuron_count(); ++r) update_row(r);
    }
    auto ws = state.weight(s);
    for (int d = 0; d < dim; ++d) ws[d] += winner_delta[d];
    state.increment_step();
}

Trajectory train(TrainingRun run, const StimulusDistribution& stimuli) {
    if (stimuli.dimension() != run.state.input_dim())
        throw std::invalid_argument("stimulus dimension does not match network input dimension");
    if (run.rule.rule == LearningRule::gwrk && std::abs(run.rule.lambda) > 1.0 &&
        !run.rule.allow_unstable_lambda)
        throw ConfigError(
            "lambda outside the serial stability window [-1, 1]; pass allow-unstable-lambda to override");
    if (run.schedule.total_steps > 0) run.schedule.validate();

    Rng rng(run.rng_seed);
    NetworkState& state = run.state;
    const std::uint64_t total = run.schedule.total_steps;

    Trajectory out{{}, state};
    auto record = [&](const NetworkState& st) {
        out.snapshots.push_back({st.step(), st.raw_weights()});
    };
    record(state);

    std::vector<double> v(static_cast<std::size_t>(state.input_dim()));
    const bool vq = run.rule.rule == LearningRule::vq;
    const bool lookup_mode = run.kernel_mode == NeighborhoodKernel::Mode::kappa_lookup;
    NeighborhoodKernel kernel =
        vq ? NeighborhoodKernel::from_kappa(0.0)
           : (lookup_mode ? NeighborhoodKernel::lookup(run.schedule.gamma_start, run.truncation_radius)
                          : NeighborhoodKernel::exact(run.schedule.gamma_start));
    double kernel_gamma = vq ? 0.0 : run.schedule.gamma_start;

    for (std::uint64_t t = 0; t < total; ++t) {
        auto pt = schedule_at(run.schedule, t);
        if (!vq) {
            if (lookup_mode) {
                // amortized table rebuild: 1e-3 relative gamma tolerance
                if (std::abs(pt.gamma - kernel_gamma) > 1e-3 * kernel_gamma) {
                    kernel = NeighborhoodKernel::lookup(pt.gamma, run.truncation_radius);
                    kernel_gamma = pt.gamma;
                }
            } else {
                kernel = NeighborhoodKernel::exact(pt.gamma);
                kernel_gamma = pt.gamma;
            }
        }
        stimuli.sample(rng, v);
        switch (run.rule.rule) {
            case LearningRule::som:
            case LearningRule::vq:
                som_step(state, kernel, pt.eta, v);
                break;
            case LearningRule::gwrk:
                gwrk_step(state, kernel, pt.eta, run.rule.lambda, v);
                break;
        }
        if (run.snapshot_every > 0 && state.step() % run.snapshot_every == 0 && state.step() != total)
            record(state);
    }
    if (total > 0) record(state);
    out.final_state = state;
    return out;
}

}  // namespace somlab
