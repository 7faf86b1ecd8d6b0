#include "somlab/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "somlab/errors.hpp"

namespace somlab {

int default_trim(int neuron_count) { return std::max(2, neuron_count / 10); }

ExponentFit estimate_exponent(const NetworkState& state, const StimulusDistribution& dist, int trim) {
    if (state.topology().dims() != 1 || state.input_dim() != 1)
        throw std::invalid_argument("estimate_exponent requires a 1-D map of a 1-D input space");
    if (dist.is_discrete())
        throw UnsupportedOperationError("estimate_exponent requires a continuous distribution");
    if (trim < 1) throw std::invalid_argument("trim must be >= 1");
    const int n = state.neuron_count();
    if (n - 2 * trim < 3) throw std::invalid_argument("fewer than 3 interior neurons after trimming");

    // strict monotonicity over the fitted range [trim-1, n-trim]
    const auto& w = state.raw_weights();
    bool increasing = w[trim] > w[trim - 1];
    for (int r = trim; r <= n - trim; ++r) {
        bool up = w[r] > w[r - 1];
        if (w[r] == w[r - 1] || up != increasing)
            throw TopologicalDefectError("weights are not strictly monotone near neuron " + std::to_string(r));
    }

    std::vector<double> x, y;
    x.reserve(static_cast<std::size_t>(n - 2 * trim));
    y.reserve(x.capacity());
    for (int r = trim; r < n - trim; ++r) {
        double spacing = std::abs(w[r + 1] - w[r - 1]);
        double p = dist.marginal_density(w[r]);
        if (!(p > 0.0))
            throw std::invalid_argument("weight at neuron " + std::to_string(r) +
                                        " lies outside the density support");
        x.push_back(std::log(p));
        y.push_back(std::log(2.0 / spacing));
    }

    const int m = static_cast<int>(x.size());
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < m; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < m; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx < 1e-12)
        throw DegenerateRegressorError("ln p(w) has no variance; the exponent is unidentifiable");

    ExponentFit fit;
    fit.points_used = m;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (int i = 0; i < m; ++i) {
        double e = y[i] - (fit.intercept + fit.slope * x[i]);
        sse += e * e;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    fit.stderr_slope = std::sqrt(sse / (m - 2) / sxx);
    return fit;
}

double theoretical_exponent(double lambda) {
    if (!(lambda >= -1.0) || !(lambda <= 1.0))
        throw std::out_of_range("theoretical exponent defined for lambda in [-1, 1]");
    return 2.0 / (3.0 + lambda);
}

OrderingReport ordering_report_weights(const std::vector<double>& weights) {
    OrderingReport rep;
    int prev_sign = 0;
    for (std::size_t r = 0; r + 1 < weights.size(); ++r) {
        double diff = weights[r + 1] - weights[r];
        int sign = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
        if (sign == 0) continue;
        if (prev_sign != 0 && sign != prev_sign) ++rep.defects;
        prev_sign = sign;
    }
    rep.is_ordered = rep.defects == 0;
    return rep;
}

OrderingReport ordering_report(const NetworkState& state) {
    if (state.topology().dims() != 1 || state.input_dim() != 1)
        throw std::invalid_argument("ordering_report requires a 1-D map of a 1-D input space");
    return ordering_report_weights(state.raw_weights());
}

std::optional<std::uint64_t> ordering_time(const Trajectory& trajectory) {
    for (const auto& snap : trajectory.snapshots) {
        if (ordering_report_weights(snap.weights).is_ordered) return snap.step;
    }
    return std::nullopt;
}

FiringHistogram firing_entropy(const NetworkState& state, const StimulusDistribution& dist,
                               std::int64_t probes, Rng& rng) {
    if (dist.dimension() != state.input_dim())
        throw std::invalid_argument("stimulus dimension does not match network input dimension");
    if (probes < 10 * static_cast<std::int64_t>(state.neuron_count()))
        throw std::invalid_argument("firing_entropy requires probes >= 10 * neuron count");
    FiringHistogram hist;
    hist.counts.assign(static_cast<std::size_t>(state.neuron_count()), 0);
    std::vector<double> v(static_cast<std::size_t>(state.input_dim()));
    for (std::int64_t i = 0; i < probes; ++i) {
        dist.sample(rng, v);
        ++hist.counts[static_cast<std::size_t>(find_winner(state, v))];
    }
    double h = 0.0;
    for (std::int64_t c : hist.counts) {
        if (c == 0) continue;
        double f = static_cast<double>(c) / static_cast<double>(probes);
        h -= f * std::log(f);
    }
    hist.entropy = h;
    return hist;
}

}  // namespace somlab
