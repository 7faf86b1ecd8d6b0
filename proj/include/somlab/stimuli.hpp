#pragma once

#include <span>
#include <vector>

#include "somlab/rng.hpp"

namespace somlab {

/// Input probability density p(v) with a seeded sampler.
///
/// Continuous variants (uniform, power-law, piecewise-constant) are 1-D
/// marginals; dimension > 1 means the product of independent copies of
/// the same marginal. The discrete variant is an explicit weighted point
/// set in input space.
class StimulusDistribution {
public:
    enum class Kind { uniform, power_law, piecewise_constant, discrete };

    static StimulusDistribution uniform(double lo, double hi, int dim = 1);

    /// p(v) proportional to v^a on [lo, hi]; requires a > -1 and lo > 0.
    static StimulusDistribution power_law(double a, double lo, double hi, int dim = 1);

    /// Piecewise-constant density: K segments between K+1 strictly
    /// increasing breakpoints, with nonnegative segment weights.
    static StimulusDistribution piecewise_constant(std::vector<double> breakpoints,
                                                   std::vector<double> weights, int dim = 1);

    /// Discrete weighted point set; probabilities normalized at
    /// construction and must all be > 0.
    static StimulusDistribution discrete(std::vector<std::vector<double>> points,
                                         std::vector<double> probabilities);

    Kind kind() const { return kind_; }
    bool is_discrete() const { return kind_ == Kind::discrete; }
    int dimension() const { return dim_; }

    /// Seeded draw with law p. Continuous variants use the inverse-CDF
    /// transform per coordinate.
    std::vector<double> sample(Rng& rng) const;
    void sample(Rng& rng, std::span<double> out) const;

    /// Normalized density at v; zero outside the support. Discrete
    /// variant -> UnsupportedOperationError.
    double density_at(std::span<const double> v) const;

    /// 1-D marginal density (continuous variants only).
    double marginal_density(double x) const;

    /// CDF of the 1-D marginal (continuous variants only).
    double cdf(double x) const;

    /// Inverse CDF; continuous variants with dimension 1 only.
    /// Throws std::out_of_range if q is outside [0, 1].
    double inverse_cdf(double q) const;

    /// Support bounds per input dimension (for discrete: bounding box).
    std::vector<double> support_lo() const;
    std::vector<double> support_hi() const;

    // discrete access
    std::size_t point_count() const;
    std::span<const double> point(std::size_t mu) const;
    double probability(std::size_t mu) const;

    // parameters (for config echo)
    double param_lo() const { return lo_; }
    double param_hi() const { return hi_; }
    double param_exponent() const { return exponent_; }
    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& segment_weights() const { return seg_weights_; }

private:
    StimulusDistribution() = default;

    double marginal_inverse_cdf(double q) const;
    void require_continuous(const char* op) const;

    Kind kind_ = Kind::uniform;
    int dim_ = 1;

    // continuous marginal parameters
    double lo_ = 0.0, hi_ = 1.0;
    double exponent_ = 0.0;              // power-law a
    double norm_ = 1.0;                  // density normalization constant
    std::vector<double> breaks_;         // piecewise breakpoints (K+1)
    std::vector<double> seg_weights_;    // piecewise raw weights (K)
    std::vector<double> seg_cdf_;        // piecewise cumulative mass at breakpoints (K+1)

    // discrete data
    std::vector<std::vector<double>> points_;
    std::vector<double> probs_;
};

}  // namespace somlab
