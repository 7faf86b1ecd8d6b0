#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "somlab/lattice.hpp"
#include "somlab/rng.hpp"

namespace somlab {

/// Lattice of weight vectors in input space plus a step counter.
class NetworkState {
public:
    NetworkState(LatticeTopology topology, int input_dim);

    const LatticeTopology& topology() const { return topology_; }
    int input_dim() const { return input_dim_; }
    int neuron_count() const { return topology_.neuron_count(); }
    std::uint64_t step() const { return step_; }
    void set_step(std::uint64_t s) { step_ = s; }
    void increment_step() { ++step_; }

    std::span<double> weight(int r);
    std::span<const double> weight(int r) const;

    std::vector<double>& raw_weights() { return weights_; }
    const std::vector<double>& raw_weights() const { return weights_; }

private:
    LatticeTopology topology_;
    int input_dim_;
    std::vector<double> weights_;  // neuron_count x input_dim, row-major
    std::uint64_t step_ = 0;
};

/// Index of the neuron whose weight vector is nearest to v (Euclidean).
/// Ties break to the smallest flattened lattice index. Throws
/// std::invalid_argument on dimension mismatch.
int find_winner(const NetworkState& state, std::span<const double> v);

/// As find_winner, and also reports the best and second-best distances
/// (second_best is +infinity when there is a single neuron).
int find_winner_with_margin(const NetworkState& state, std::span<const double> v, double& best_dist,
                            double& second_dist);

/// Weights uniformly random inside the box [lo, hi] per input dimension.
void init_random_box(NetworkState& state, std::span<const double> lo, std::span<const double> hi, Rng& rng);

/// Weights on an ordered regular grid inside the box: lattice axis d maps
/// linearly onto input dimension d. Requires input_dim == lattice dims.
void init_ordered(NetworkState& state, std::span<const double> lo, std::span<const double> hi);

}  // namespace somlab
