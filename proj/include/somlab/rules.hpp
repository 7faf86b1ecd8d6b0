#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "somlab/kernel.hpp"
#include "somlab/network.hpp"
#include "somlab/schedule.hpp"
#include "somlab/stimuli.hpp"

namespace somlab {

enum class LearningRule { som, gwrk, vq };

struct RuleConfig {
    LearningRule rule = LearningRule::som;
    double lambda = 0.0;  // GWRK winner coefficient; >0 relaxes, <0 enhances
    bool allow_unstable_lambda = false;
};

/// One serial SOM update: w_r += eta * g(r, s) * (v - w_r) for every r,
/// with s the winner; increments the step counter.
void som_step(NetworkState& state, const NeighborhoodKernel& kernel, double eta, std::span<const double> v);

/// One serial GWRK update. Non-winners receive exactly the SOM update;
/// the winner receives eta * ((v - w_s) - lambda * sum_{r' != s} g(r', s) (v - w_{r'}))
/// with the sum taken over pre-update weights. lambda == 0 reproduces
/// som_step bit for bit.
void gwrk_step(NetworkState& state, const NeighborhoodKernel& kernel, double eta, double lambda,
               std::span<const double> v);

enum class InitMode { ordered, random_box };

struct Snapshot {
    std::uint64_t step;
    std::vector<double> weights;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;  // step 0, every snapshot_every, and the final step
    NetworkState final_state;
};

struct TrainingRun {
    NetworkState state;
    LearningSchedule schedule;
    RuleConfig rule;
    std::uint64_t rng_seed = 1;
    std::uint64_t snapshot_every = 0;  // 0: snapshot only the endpoints
    NeighborhoodKernel::Mode kernel_mode = NeighborhoodKernel::Mode::exact_gaussian;
    int truncation_radius = NeighborhoodKernel::default_truncation_radius;
};

/// Serial stochastic training: draws schedule.total_steps stimuli from the
/// seeded sampler and applies the configured rule with scheduled (eta,
/// gamma). In kappa-lookup mode the table is rebuilt when gamma drifts by
/// more than 1 part in 10^3 relative; exact mode follows gamma every step.
/// VQ ignores the gamma schedule (delta kernel).
///
/// Throws ConfigError when rule is GWRK with |lambda| > 1 and the
/// override flag is not set.
Trajectory train(TrainingRun run, const StimulusDistribution& stimuli);

}  // namespace somlab
