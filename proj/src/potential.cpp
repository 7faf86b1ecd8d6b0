#include "somlab/potential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "somlab/errors.hpp"

namespace somlab {

namespace {

void require_discrete(const StimulusDistribution& stimuli, const char* op) {
    if (!stimuli.is_discrete())
        throw UnsupportedOperationError(std::string(op) + " requires a discrete stimulus distribution");
}

double potential_value(const NetworkState& state, const StimulusDistribution& stimuli,
                       const NeighborhoodKernel& kernel, const std::vector<int>& assignment) {
    const auto& topo = state.topology();
    const int n = state.neuron_count();
    const int dim = state.input_dim();
    double total = 0.0;
    for (std::size_t mu = 0; mu < stimuli.point_count(); ++mu) {
        auto v = stimuli.point(mu);
        double p = stimuli.probability(mu);
        int s = assignment[mu];
        for (int r = 0; r < n; ++r) {
            double g = kernel.exact_value_at_sq(topo.squared_distance(r, s));
            if (g == 0.0) continue;
            auto w = state.weight(r);
            double d2 = 0.0;
            for (int d = 0; d < dim; ++d) {
                double diff = v[d] - w[d];
                d2 += diff * diff;
            }
            total += 0.5 * g * p * d2;
        }
    }
    return total;
}

}  // namespace

VoronoiPartition voronoi_partition(const NetworkState& state, const StimulusDistribution& stimuli) {
    require_discrete(stimuli, "voronoi_partition");
    if (stimuli.dimension() != state.input_dim())
        throw std::invalid_argument("stimulus dimension does not match network input dimension");
    VoronoiPartition part;
    part.assignment.resize(stimuli.point_count());
    part.boundary_margin = std::numeric_limits<double>::infinity();
    for (std::size_t mu = 0; mu < stimuli.point_count(); ++mu) {
        double best, second;
        part.assignment[mu] = find_winner_with_margin(state, stimuli.point(mu), best, second);
        if (std::isfinite(second)) part.boundary_margin = std::min(part.boundary_margin, second - best);
    }
    return part;
}

PotentialReport wrk_potential(const NetworkState& state, const StimulusDistribution& stimuli,
                              const NeighborhoodKernel& kernel) {
    require_discrete(stimuli, "wrk_potential");
    VoronoiPartition part = voronoi_partition(state, stimuli);
    double value = potential_value(state, stimuli, kernel, part.assignment);
    return {value, std::move(part), kernel.gamma()};
}

std::vector<double> expected_gwrk_step(const NetworkState& state, const StimulusDistribution& stimuli,
                                       const NeighborhoodKernel& kernel, double lambda) {
    require_discrete(stimuli, "expected_gwrk_step");
    if (stimuli.dimension() != state.input_dim())
        throw std::invalid_argument("stimulus dimension does not match network input dimension");
    const auto& topo = state.topology();
    const int n = state.neuron_count();
    const int dim = state.input_dim();
    std::vector<double> field(static_cast<std::size_t>(n) * dim, 0.0);
    std::vector<double> relax(static_cast<std::size_t>(dim));
    for (std::size_t mu = 0; mu < stimuli.point_count(); ++mu) {
        auto v = stimuli.point(mu);
        double p = stimuli.probability(mu);
        int s = find_winner(state, v);
        std::fill(relax.begin(), relax.end(), 0.0);
        for (int r = 0; r < n; ++r) {
            double g = kernel.exact_value_at_sq(topo.squared_distance(r, s));
            auto w = state.weight(r);
            double* fr = &field[static_cast<std::size_t>(r) * dim];
            for (int d = 0; d < dim; ++d) {
                double diff = v[d] - w[d];
                fr[d] += p * g * diff;
                if (r != s) relax[d] += g * diff;
            }
        }
        double* fs = &field[static_cast<std::size_t>(s) * dim];
        for (int d = 0; d < dim; ++d) fs[d] -= lambda * p * relax[d];
    }
    return field;
}

double gradient_check(const NetworkState& state, const StimulusDistribution& stimuli,
                      const NeighborhoodKernel& kernel, double lambda, double h) {
    require_discrete(stimuli, "gradient_check");
    VoronoiPartition part = voronoi_partition(state, stimuli);
    if (!(part.boundary_margin > 10.0 * h))
        throw BorderCrossingError("boundary margin " + std::to_string(part.boundary_margin) +
                                  " is below 10 h = " + std::to_string(10.0 * h) +
                                  "; a Voronoi border would cross a stimulus during the probe");

    std::vector<double> field = expected_gwrk_step(state, stimuli, kernel, lambda);
    double scale = 0.0;
    for (double f : field) scale = std::max(scale, std::abs(f));
    if (scale == 0.0) scale = 1.0;

    NetworkState probe = state;
    const int n = state.neuron_count();
    const int dim = state.input_dim();
    double worst = 0.0;
    for (int r = 0; r < n; ++r) {
        for (int d = 0; d < dim; ++d) {
            auto w = probe.weight(r);
            double saved = w[d];
            w[d] = saved + h;
            double vp = wrk_potential(probe, stimuli, kernel).value;
            w[d] = saved - h;
            double vm = wrk_potential(probe, stimuli, kernel).value;
            w[d] = saved;
            double neg_grad = -(vp - vm) / (2.0 * h);
            double err = std::abs(neg_grad - field[static_cast<std::size_t>(r) * dim + d]) / scale;
            worst = std::max(worst, err);
        }
    }
    return worst;
}

double tsp_limit_energy(const NetworkState& state, const StimulusDistribution& cities, double kappa) {
    require_discrete(cities, "tsp_limit_energy");
    const auto& topo = state.topology();
    if (topo.dims() != 1 || !topo.periodic(0))
        throw std::invalid_argument("tsp_limit_energy requires a periodic 1-D topology");
    const int n = state.neuron_count();
    const std::size_t m = cities.point_count();
    if (static_cast<std::size_t>(n) != m)
        throw std::invalid_argument("tsp_limit_energy requires neuron count == city count");
    double p0 = cities.probability(0);
    for (std::size_t mu = 1; mu < m; ++mu)
        if (std::abs(cities.probability(mu) - p0) > 1e-12 * p0)
            throw std::invalid_argument("tsp_limit_energy requires equal city probabilities");

    const int dim = state.input_dim();
    std::vector<char> taken(m, 0);
    double quant = 0.0;
    for (std::size_t mu = 0; mu < m; ++mu) {
        auto v = cities.point(mu);
        int s = find_winner(state, v);
        if (taken[static_cast<std::size_t>(s)])
            throw std::invalid_argument("tsp_limit_energy requires a bijective city-neuron matching");
        taken[static_cast<std::size_t>(s)] = 1;
        auto w = state.weight(s);
        double d2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            double diff = v[d] - w[d];
            d2 += diff * diff;
        }
        quant += cities.probability(mu) * 0.5 * d2;
    }

    double ring = 0.0;
    for (int r = 0; r < n; ++r) {
        auto a = state.weight(r);
        auto b = state.weight((r + 1) % n);
        double d2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            double diff = b[d] - a[d];
            d2 += diff * diff;
        }
        ring += d2;
    }
    return quant + kappa * ring / static_cast<double>(m);
}

}  // namespace somlab
