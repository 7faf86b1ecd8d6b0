#include "somlab/stimuli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "somlab/errors.hpp"

namespace somlab {

StimulusDistribution StimulusDistribution::uniform(double lo, double hi, int dim) {
    if (!(lo < hi)) throw std::invalid_argument("uniform: requires lo < hi");
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    StimulusDistribution d;
    d.kind_ = Kind::uniform;
    d.dim_ = dim;
    d.lo_ = lo;
    d.hi_ = hi;
    d.norm_ = 1.0 / (hi - lo);
    return d;
}

StimulusDistribution StimulusDistribution::power_law(double a, double lo, double hi, int dim) {
    if (!(lo < hi)) throw std::invalid_argument("power-law: requires lo < hi");
    if (!(lo > 0.0)) throw std::invalid_argument("power-law: requires lo > 0");
    if (!(a > -1.0)) throw std::invalid_argument("power-law: requires exponent a > -1");
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    StimulusDistribution d;
    d.kind_ = Kind::power_law;
    d.dim_ = dim;
    d.lo_ = lo;
    d.hi_ = hi;
    d.exponent_ = a;
    // integral of v^a over [lo, hi]
    double mass = (std::pow(hi, a + 1.0) - std::pow(lo, a + 1.0)) / (a + 1.0);
    d.norm_ = 1.0 / mass;
    return d;
}

StimulusDistribution StimulusDistribution::piecewise_constant(std::vector<double> breakpoints,
                                                              std::vector<double> weights, int dim) {
    if (breakpoints.size() < 2) throw std::invalid_argument("piecewise: need at least 2 breakpoints");
    if (weights.size() + 1 != breakpoints.size())
        throw std::invalid_argument("piecewise: need one weight per segment");
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw std::invalid_argument("piecewise: breakpoints must be strictly increasing");
    double mass = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0)) throw std::invalid_argument("piecewise: weights must be >= 0");
        mass += weights[i] * (breakpoints[i + 1] - breakpoints[i]);
    }
    if (!(mass > 0.0)) throw std::invalid_argument("piecewise: total mass must be > 0");
    StimulusDistribution d;
    d.kind_ = Kind::piecewise_constant;
    d.dim_ = dim;
    d.breaks_ = std::move(breakpoints);
    d.seg_weights_ = std::move(weights);
    d.lo_ = d.breaks_.front();
    d.hi_ = d.breaks_.back();
    d.norm_ = 1.0 / mass;
    d.seg_cdf_.assign(d.breaks_.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < d.seg_weights_.size(); ++i) {
        acc += d.seg_weights_[i] * (d.breaks_[i + 1] - d.breaks_[i]) * d.norm_;
        d.seg_cdf_[i + 1] = acc;
    }
    d.seg_cdf_.back() = 1.0;
    return d;
}

StimulusDistribution StimulusDistribution::discrete(std::vector<std::vector<double>> points,
                                                    std::vector<double> probabilities) {
    if (points.empty()) throw std::invalid_argument("discrete: need at least one point");
    if (points.size() != probabilities.size())
        throw std::invalid_argument("discrete: need one probability per point");
    std::size_t dim = points.front().size();
    if (dim == 0) throw std::invalid_argument("discrete: points must have dimension >= 1");
    double mass = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) throw std::invalid_argument("discrete: inconsistent point dimensions");
        if (!(probabilities[i] > 0.0)) throw std::invalid_argument("discrete: probabilities must be > 0");
        mass += probabilities[i];
    }
    StimulusDistribution d;
    d.kind_ = Kind::discrete;
    d.dim_ = static_cast<int>(dim);
    d.points_ = std::move(points);
    d.probs_ = std::move(probabilities);
    for (double& p : d.probs_) p /= mass;
    return d;
}

void StimulusDistribution::require_continuous(const char* op) const {
    if (kind_ == Kind::discrete)
        throw UnsupportedOperationError(std::string(op) + " is not supported for discrete distributions");
}

double StimulusDistribution::marginal_density(double x) const {
    require_continuous("marginal_density");
    if (x < lo_ || x > hi_) return 0.0;
    switch (kind_) {
        case Kind::uniform:
            return norm_;
        case Kind::power_law:
            return norm_ * std::pow(x, exponent_);
        case Kind::piecewise_constant: {
            auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
            std::size_t seg = (it == breaks_.begin()) ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
            if (seg >= seg_weights_.size()) seg = seg_weights_.size() - 1;
            return norm_ * seg_weights_[seg];
        }
        default:
            return 0.0;
    }
}

double StimulusDistribution::density_at(std::span<const double> v) const {
    require_continuous("density_at");
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("density_at: vector dimension mismatch");
    double p = 1.0;
    for (double x : v) p *= marginal_density(x);
    return p;
}

double StimulusDistribution::cdf(double x) const {
    require_continuous("cdf");
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    switch (kind_) {
        case Kind::uniform:
            return (x - lo_) * norm_;
        case Kind::power_law: {
            double a1 = exponent_ + 1.0;
            return norm_ * (std::pow(x, a1) - std::pow(lo_, a1)) / a1;
        }
        case Kind::piecewise_constant: {
            auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
            std::size_t seg = static_cast<std::size_t>(it - breaks_.begin());
            seg = (seg == 0) ? 0 : seg - 1;
            if (seg >= seg_weights_.size()) seg = seg_weights_.size() - 1;
            return seg_cdf_[seg] + norm_ * seg_weights_[seg] * (x - breaks_[seg]);
        }
        default:
            return 0.0;
    }
}

double StimulusDistribution::marginal_inverse_cdf(double q) const {
    switch (kind_) {
        case Kind::uniform:
            return lo_ + q * (hi_ - lo_);
        case Kind::power_law: {
            double a1 = exponent_ + 1.0;
            double lp = std::pow(lo_, a1), hp = std::pow(hi_, a1);
            return std::pow(lp + q * (hp - lp), 1.0 / a1);
        }
        case Kind::piecewise_constant: {
            auto it = std::upper_bound(seg_cdf_.begin(), seg_cdf_.end(), q);
            std::size_t seg = static_cast<std::size_t>(it - seg_cdf_.begin());
            seg = (seg == 0) ? 0 : seg - 1;
            // skip zero-weight segments that share the same cumulative value
            while (seg + 1 < seg_weights_.size() && seg_weights_[seg] == 0.0) ++seg;
            if (seg >= seg_weights_.size()) seg = seg_weights_.size() - 1;
            double dens = norm_ * seg_weights_[seg];
            if (dens <= 0.0) return breaks_[seg];
            return breaks_[seg] + (q - seg_cdf_[seg]) / dens;
        }
        default:
            return 0.0;
    }
}

double StimulusDistribution::inverse_cdf(double q) const {
    require_continuous("inverse_cdf");
    if (dim_ != 1) throw UnsupportedOperationError("inverse_cdf requires dimension 1");
    if (!(q >= 0.0) || !(q <= 1.0)) throw std::out_of_range("inverse_cdf: q must lie in [0, 1]");
    if (q == 0.0) return lo_;
    if (q == 1.0) return hi_;
    return marginal_inverse_cdf(q);
}

void StimulusDistribution::sample(Rng& rng, std::span<double> out) const {
    if (static_cast<int>(out.size()) != dim_) throw std::invalid_argument("sample: output dimension mismatch");
    if (kind_ == Kind::discrete) {
        double q = rng.uniform();
        double acc = 0.0;
        std::size_t pick = points_.size() - 1;
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            acc += probs_[i];
            if (q < acc) {
                pick = i;
                break;
            }
        }
        const auto& p = points_[pick];
        std::copy(p.begin(), p.end(), out.begin());
        return;
    }
    for (int d = 0; d < dim_; ++d) out[d] = marginal_inverse_cdf(rng.uniform());
}

std::vector<double> StimulusDistribution::sample(Rng& rng) const {
    std::vector<double> v(static_cast<std::size_t>(dim_));
    sample(rng, v);
    return v;
}

std::vector<double> StimulusDistribution::support_lo() const {
    if (kind_ != Kind::discrete) return std::vector<double>(static_cast<std::size_t>(dim_), lo_);
    std::vector<double> lo(static_cast<std::size_t>(dim_), std::numeric_limits<double>::infinity());
    for (const auto& p : points_)
        for (int d = 0; d < dim_; ++d) lo[d] = std::min(lo[d], p[d]);
    return lo;
}

std::vector<double> StimulusDistribution::support_hi() const {
    if (kind_ != Kind::discrete) return std::vector<double>(static_cast<std::size_t>(dim_), hi_);
    std::vector<double> hi(static_cast<std::size_t>(dim_), -std::numeric_limits<double>::infinity());
    for (const auto& p : points_)
        for (int d = 0; d < dim_; ++d) hi[d] = std::max(hi[d], p[d]);
    return hi;
}

std::size_t StimulusDistribution::point_count() const {
    if (kind_ != Kind::discrete) throw UnsupportedOperationError("point_count requires a discrete distribution");
    return points_.size();
}

std::span<const double> StimulusDistribution::point(std::size_t mu) const {
    if (kind_ != Kind::discrete) throw UnsupportedOperationError("point requires a discrete distribution");
    if (mu >= points_.size()) throw std::out_of_range("stimulus index out of range");
    return points_[mu];
}

double StimulusDistribution::probability(std::size_t mu) const {
    if (kind_ != Kind::discrete) throw UnsupportedOperationError("probability requires a discrete distribution");
    if (mu >= probs_.size()) throw std::out_of_range("stimulus index out of range");
    return probs_[mu];
}

}  // namespace somlab
