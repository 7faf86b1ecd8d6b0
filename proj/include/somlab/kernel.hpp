#pragma once

#include <cstdint>
#include <vector>

#include "somlab/lattice.hpp"

namespace somlab {

/// Gaussian neighborhood coupling g(r,s) = kappa^(d(r,s)^2) with
/// kappa = exp(-1/(2 gamma^2)), normalized so g(s,s) = 1.
///
/// Two evaluation modes:
///  - exact_gaussian: evaluate the power for every squared distance.
///  - kappa_lookup: precomputed powers of kappa up to a truncation radius;
///    zero beyond it. Inside the radius both modes agree bit for bit
///    because the table entries are produced by the same power evaluation.
class NeighborhoodKernel {
public:
    enum class Mode { exact_gaussian, kappa_lookup };

    static constexpr int default_truncation_radius = 3;

    /// Kernel from width gamma > 0 (lattice units).
    static NeighborhoodKernel exact(double gamma);
    static NeighborhoodKernel lookup(double gamma, int truncation_radius = default_truncation_radius);

    /// Kernel from kappa in [0, 1). kappa = 0 is the Vector Quantization
    /// limit (delta kernel, gamma -> 0).
    static NeighborhoodKernel from_kappa(double kappa, Mode mode = Mode::exact_gaussian,
                                         int truncation_radius = default_truncation_radius);

    Mode mode() const { return mode_; }
    double gamma() const { return gamma_; }
    double kappa() const { return kappa_; }
    int truncation_radius() const { return truncation_radius_; }

    /// Kernel value for an integer squared lattice distance.
    double value_at_sq(std::int64_t d2) const;

    /// Kernel value ignoring any truncation (always the exact power).
    /// Potential-energy computations use this to stay free of lookup
    /// truncation artifacts.
    double exact_value_at_sq(std::int64_t d2) const;

    /// g(r, s) on the given topology. Throws std::out_of_range for bad
    /// indices.
    double value(const LatticeTopology& topology, int r, int s) const;

private:
    NeighborhoodKernel(double gamma, double kappa, Mode mode, int truncation_radius);

    double gamma_ = 0.0;
    double kappa_ = 0.0;
    Mode mode_ = Mode::exact_gaussian;
    int truncation_radius_ = 0;
    std::vector<double> table_;  // kappa^k for k = 0..truncation_radius^2 (lookup mode)
};

}  // namespace somlab
