#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "somlab/analysis.hpp"
#include "somlab/lattice.hpp"
#include "somlab/rules.hpp"
#include "somlab/schedule.hpp"
#include "somlab/stimuli.hpp"

namespace somlab {

/// Fully resolved experiment configuration. Defaults are the shipped
/// acceptance-scale preset: N=200 open chain, power-law a=1 on [0.1, 1],
/// 2e5 steps, eta 0.5 -> 0.02, gamma 10 -> 0.8, ordered initialization,
/// exact-Gaussian kernel, 8 replicates.
struct ExperimentConfig {
    RuleConfig rule;
    LearningSchedule schedule;
    LatticeTopology topology = LatticeTopology::chain(200);
    StimulusDistribution distribution = StimulusDistribution::power_law(1.0, 0.1, 1.0);
    std::uint64_t seed = 1001;
    int replicates = 8;
    int trim = 0;  // resolved to max(2, N/10) when left at 0
    std::int64_t probes = 100000;
    std::string output_path = "out";
    std::uint64_t snapshot_every = 50000;
    InitMode init = InitMode::ordered;
    NeighborhoodKernel::Mode kernel_mode = NeighborhoodKernel::Mode::exact_gaussian;
    int truncation_radius = NeighborhoodKernel::default_truncation_radius;

    int resolved_trim() const { return trim > 0 ? trim : default_trim(topology.neuron_count()); }

    /// Deterministic key-value echo of every resolved field, one
    /// "key = value" per line, grouped by section. Embedded in every
    /// output file so results are self-describing.
    std::string echo() const;
};

/// Parses the flat key-value config format (INI-like sections: rule,
/// schedule, topology, distribution, analysis, run, output). Unknown
/// sections or keys, type mismatches, and invariant violations raise
/// ConfigError naming the offending key. `allow_unstable_lambda` is the
/// CLI-level override for the GWRK stability window.
ExperimentConfig parse_config(const std::string& text, bool allow_unstable_lambda = false);

}  // namespace somlab
