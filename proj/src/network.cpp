#include "somlab/network.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace somlab {

NetworkState::NetworkState(LatticeTopology topology, int input_dim)
    : topology_(topology), input_dim_(input_dim) {
    if (input_dim_ < 1) throw std::invalid_argument("input dimension must be >= 1");
    weights_.assign(static_cast<std::size_t>(topology_.neuron_count()) * input_dim_, 0.0);
}

std::span<double> NetworkState::weight(int r) {
    if (r < 0 || r >= neuron_count()) throw std::out_of_range("neuron index out of range");
    return {weights_.data() + static_cast<std::size_t>(r) * input_dim_, static_cast<std::size_t>(input_dim_)};
}

std::span<const double> NetworkState::weight(int r) const {
    if (r < 0 || r >= neuron_count()) throw std::out_of_range("neuron index out of range");
    return {weights_.data() + static_cast<std::size_t>(r) * input_dim_, static_cast<std::size_t>(input_dim_)};
}

namespace {
inline double squared_dist(const double* w, const double* v, int dim) {
    double sum = 0.0;
    for (int d = 0; d < dim; ++d) {
        double diff = v[d] - w[d];
        sum += diff * diff;
    }
    return sum;
}
}  // namespace

int find_winner_with_margin(const NetworkState& state, std::span<const double> v, double& best_dist,
                            double& second_dist) {
    if (static_cast<int>(v.size()) != state.input_dim())
        throw std::invalid_argument("stimulus dimension does not match network input dimension");
    const int n = state.neuron_count();
    const int dim = state.input_dim();
    const double* w = state.raw_weights().data();
    int best = 0;
    double b1 = std::numeric_limits<double>::infinity();
    double b2 = std::numeric_limits<double>::infinity();
    for (int r = 0; r < n; ++r) {
        double d = squared_dist(w + static_cast<std::size_t>(r) * dim, v.data(), dim);
        if (d < b1) {
            b2 = b1;
            b1 = d;
            best = r;
        } else if (d < b2) {
            b2 = d;
        }
    }
    best_dist = std::sqrt(b1);
    second_dist = std::isinf(b2) ? b2 : std::sqrt(b2);
    return best;
}

int find_winner(const NetworkState& state, std::span<const double> v) {
    double b1, b2;
    return find_winner_with_margin(state, v, b1, b2);
}

void init_random_box(NetworkState& state, std::span<const double> lo, std::span<const double> hi, Rng& rng) {
    const int dim = state.input_dim();
    if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
        throw std::invalid_argument("box bounds must match input dimension");
    for (int r = 0; r < state.neuron_count(); ++r) {
        auto w = state.weight(r);
        for (int d = 0; d < dim; ++d) w[d] = rng.uniform(lo[d], hi[d]);
    }
}

void init_ordered(NetworkState& state, std::span<const double> lo, std::span<const double> hi) {
    const int dim = state.input_dim();
    const auto& topo = state.topology();
    if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
        throw std::invalid_argument("box bounds must match input dimension");
    if (dim != topo.dims())
        throw std::invalid_argument("ordered init requires input dimension == lattice dimension");
    for (int r = 0; r < state.neuron_count(); ++r) {
        auto c = topo.coords(r);
        auto w = state.weight(r);
        for (int d = 0; d < dim; ++d) {
            double frac = (c[d] + 0.5) / topo.size(d);
            w[d] = lo[d] + frac * (hi[d] - lo[d]);
        }
    }
}

}  // namespace somlab
