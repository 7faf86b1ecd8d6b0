#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "somlab/network.hpp"
#include "somlab/rules.hpp"
#include "somlab/stimuli.hpp"

namespace somlab {

/// Log-log regression result for the magnification exponent.
struct ExponentFit {
    double slope = 0.0;      // the magnification exponent estimate
    double intercept = 0.0;
    double r_squared = 0.0;
    double stderr_slope = 0.0;
    int points_used = 0;
};

struct OrderingReport {
    bool is_ordered = false;
    int defects = 0;  // sign flips in consecutive weight differences
    std::optional<std::uint64_t> first_ordered_step;
};

struct FiringHistogram {
    std::vector<std::int64_t> counts;
    double entropy = 0.0;  // nats
};

/// Magnification exponent of a trained 1-D map on a continuous density:
/// local magnification M_r = 2 / (w_{r+1} - w_{r-1}) for interior neurons
/// (trim excluded at each end), ordinary least squares of ln M_r on
/// ln p(w_r).
///
/// Throws TopologicalDefectError when the weight sequence is not strictly
/// monotone over the fitted range, and DegenerateRegressorError when
/// ln p has no variance (uniform density).
ExponentFit estimate_exponent(const NetworkState& state, const StimulusDistribution& dist, int trim);

/// 2 / (3 + lambda); the GWRK magnification exponent. Throws
/// std::out_of_range for lambda outside [-1, 1].
double theoretical_exponent(double lambda);

/// Monotonicity report of a 1-D map: defects counts sign changes in
/// consecutive differences; monotone increasing and decreasing both count
/// as ordered (mirror symmetry of the chain). Zero differences are
/// skipped.
OrderingReport ordering_report(const NetworkState& state);
OrderingReport ordering_report_weights(const std::vector<double>& weights);

/// First snapshot step at which the map is ordered; empty if never.
std::optional<std::uint64_t> ordering_time(const Trajectory& trajectory);

/// Draws `probes` stimuli, counts winners, and returns the plug-in
/// Shannon entropy of the empirical winner distribution. Requires
/// probes >= 10 * neuron count.
FiringHistogram firing_entropy(const NetworkState& state, const StimulusDistribution& dist,
                               std::int64_t probes, Rng& rng);

/// Default fit trim: max(2, N/10) neurons per end.
int default_trim(int neuron_count);

}  // namespace somlab
