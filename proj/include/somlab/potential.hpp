#pragma once

#include <vector>

#include "somlab/kernel.hpp"
#include "somlab/network.hpp"
#include "somlab/stimuli.hpp"

namespace somlab {

/// Winner assignment of a discrete stimulus set plus the smallest gap
/// between best and second-best distances over all stimuli. The margin
/// bounds how far any weight may move before a Voronoi border crosses a
/// stimulus.
struct VoronoiPartition {
    std::vector<int> assignment;  // stimulus index -> winner neuron
    double boundary_margin;       // min over stimuli of (2nd-best - best) distance
};

VoronoiPartition voronoi_partition(const NetworkState& state, const StimulusDistribution& stimuli);

struct PotentialReport {
    double value;
    VoronoiPartition partition;
    double gamma;  // kernel width used
};

/// V = 1/2 sum_r sum_mu g(r, s(v_mu)) p(v_mu) |v_mu - w_r|^2 with s the
/// current Voronoi assignment. Discrete distributions only. The kernel is
/// evaluated exactly (no lookup truncation).
PotentialReport wrk_potential(const NetworkState& state, const StimulusDistribution& stimuli,
                              const NeighborhoodKernel& kernel);

/// Expected per-step displacement field of the GWRK rule, divided by eta:
/// for each neuron the p-weighted sum of its update over all stimuli.
/// Returned row-major (neuron_count x input_dim).
std::vector<double> expected_gwrk_step(const NetworkState& state, const StimulusDistribution& stimuli,
                                       const NeighborhoodKernel& kernel, double lambda);

/// Max relative error between -grad V (central differences, step h) and
/// expected_gwrk_step(lambda), normalized by the largest field component.
/// Requires boundary_margin > 10 h; otherwise throws BorderCrossingError
/// (a finite-difference probe could move a border across a stimulus).
double gradient_check(const NetworkState& state, const StimulusDistribution& stimuli,
                      const NeighborhoodKernel& kernel, double lambda = 0.5, double h = 1e-6);

/// Travelling-salesman limit of the potential on a periodic 1-D chain
/// whose neuron count equals the city count:
///   V = sum_mu p_mu 1/2 |v_mu - w_s(mu)|^2 + kappa/M * sum_r |w_{r+1} - w_r|^2.
/// City probabilities must be equal (the reduction assumes equivalent
/// cities) and the winner assignment must be a bijection; energies carry
/// the same 1/M stimulus-mass normalization as wrk_potential.
double tsp_limit_energy(const NetworkState& state, const StimulusDistribution& cities, double kappa);

}  // namespace somlab
