#include "somlab/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace somlab {

namespace {
double kappa_from_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("kernel width gamma must be > 0");
    return std::exp(-1.0 / (2.0 * gamma * gamma));
}
}  // namespace

NeighborhoodKernel::NeighborhoodKernel(double gamma, double kappa, Mode mode, int truncation_radius)
    : gamma_(gamma), kappa_(kappa), mode_(mode), truncation_radius_(truncation_radius) {
    if (mode_ == Mode::kappa_lookup) {
        if (truncation_radius_ < 0) throw std::invalid_argument("truncation radius must be >= 0");
        std::int64_t n = static_cast<std::int64_t>(truncation_radius_) * truncation_radius_;
        table_.resize(static_cast<std::size_t>(n) + 1);
        for (std::int64_t k = 0; k <= n; ++k)
            table_[static_cast<std::size_t>(k)] = std::pow(kappa_, static_cast<double>(k));
    }
}

NeighborhoodKernel NeighborhoodKernel::exact(double gamma) {
    return NeighborhoodKernel(gamma, kappa_from_gamma(gamma), Mode::exact_gaussian, 0);
}

NeighborhoodKernel NeighborhoodKernel::lookup(double gamma, int truncation_radius) {
    return NeighborhoodKernel(gamma, kappa_from_gamma(gamma), Mode::kappa_lookup, truncation_radius);
}

NeighborhoodKernel NeighborhoodKernel::from_kappa(double kappa, Mode mode, int truncation_radius) {
    if (!(kappa >= 0.0) || kappa >= 1.0) throw std::invalid_argument("kappa must lie in [0, 1)");
    // gamma = sqrt(-1 / (2 ln kappa)); 0 marks the VQ (delta kernel) limit
    double gamma = kappa > 0.0 ? std::sqrt(-1.0 / (2.0 * std::log(kappa))) : 0.0;
    return NeighborhoodKernel(gamma, kappa, mode, mode == Mode::kappa_lookup ? truncation_radius : 0);
}

double NeighborhoodKernel::exact_value_at_sq(std::int64_t d2) const {
    if (d2 == 0) return 1.0;
    if (kappa_ == 0.0) return 0.0;
    return std::pow(kappa_, static_cast<double>(d2));
}

double NeighborhoodKernel::value_at_sq(std::int64_t d2) const {
    if (d2 < 0) throw std::invalid_argument("squared distance must be >= 0");
    if (mode_ == Mode::exact_gaussian) return exact_value_at_sq(d2);
    std::int64_t r2 = static_cast<std::int64_t>(truncation_radius_) * truncation_radius_;
    if (d2 > r2) return 0.0;
    return table_[static_cast<std::size_t>(d2)];
}

double NeighborhoodKernel::value(const LatticeTopology& topology, int r, int s) const {
    return value_at_sq(topology.squared_distance(r, s));
}

}  // namespace somlab
