#include <cmath>
#include <doctest.h>
#include <vector>

#include "somlab/analysis.hpp"
#include "somlab/errors.hpp"

using namespace somlab;

namespace {

// Synthetic map whose neuron density follows p(v)^alpha exactly:
// w_r = Q^{-1}((r + 1/2) / N) with Q the CDF of the density ~ p^alpha.
// For a power-law p ~ v^a that reweighted density is ~ v^(a alpha).
NetworkState synthetic_map(double alpha, double a, double lo, double hi, int n) {
    auto q = StimulusDistribution::power_law(a * alpha, lo, hi);
    NetworkState state(LatticeTopology::chain(n), 1);
    for (int r = 0; r < n; ++r) state.weight(r)[0] = q.inverse_cdf((r + 0.5) / n);
    return state;
}

}  // namespace

TEST_CASE("the synthetic-weight oracle recovers the construction exponent") {
    for (double a : {1.0, 2.0}) {
        auto p = StimulusDistribution::power_law(a, 0.1, 1.0);
        for (double alpha : {0.5, 2.0 / 3.0, 1.0}) {
            auto state = synthetic_map(alpha, a, 0.1, 1.0, 200);
            auto fit = estimate_exponent(state, p, default_trim(200));
            CHECK(std::abs(fit.slope - alpha) < 0.02);
            CHECK(fit.points_used == 200 - 2 * default_trim(200));
            CHECK(fit.r_squared > 0.999);
        }
    }
}

TEST_CASE("uniform density makes the regressor degenerate") {
    auto u = StimulusDistribution::uniform(0.1, 1.0);
    auto state = synthetic_map(1.0, 0.0, 0.1, 1.0, 100);  // alpha irrelevant: equal spacing
    CHECK_THROWS_AS(estimate_exponent(state, u, 5), DegenerateRegressorError);
}

TEST_CASE("non-monotone weights raise the topological-defect error") {
    NetworkState state(LatticeTopology::chain(30), 1);
    for (int r = 0; r < 30; ++r) state.weight(r)[0] = 0.1 + 0.03 * r;
    std::swap(state.weight(14)[0], state.weight(15)[0]);
    auto p = StimulusDistribution::power_law(1.0, 0.05, 1.05);
    CHECK_THROWS_AS(estimate_exponent(state, p, 3), TopologicalDefectError);
}

TEST_CASE("scale equivariance of the fitted exponent") {
    // pure rescaling v -> c v keeps a power law a power law
    for (double c : {0.5, 3.0}) {
        auto p1 = StimulusDistribution::power_law(1.0, 0.1, 1.0);
        auto p2 = StimulusDistribution::power_law(1.0, 0.1 * c, 1.0 * c);
        auto s1 = synthetic_map(0.7, 1.0, 0.1, 1.0, 200);
        NetworkState s2(LatticeTopology::chain(200), 1);
        for (int r = 0; r < 200; ++r) s2.weight(r)[0] = c * s1.weight(r)[0];
        auto f1 = estimate_exponent(s1, p1, 20);
        auto f2 = estimate_exponent(s2, p2, 20);
        CHECK(std::abs(f1.slope - f2.slope) < 1e-9);
    }
    // affine map v -> c v + b on a piecewise-constant density
    {
        auto p1 = StimulusDistribution::piecewise_constant({0.0, 0.4, 1.0}, {1.0, 3.0});
        const double c = 2.0, b = 5.0;
        auto p2 = StimulusDistribution::piecewise_constant({b, 0.4 * c + b, c + b}, {1.0, 3.0});
        NetworkState s1(LatticeTopology::chain(120), 1), s2(LatticeTopology::chain(120), 1);
        for (int r = 0; r < 120; ++r) {
            double x = p1.inverse_cdf((r + 0.5) / 120.0);
            s1.weight(r)[0] = x;
            s2.weight(r)[0] = c * x + b;
        }
        auto f1 = estimate_exponent(s1, p1, 12);
        auto f2 = estimate_exponent(s2, p2, 12);
        CHECK(std::abs(f1.slope - f2.slope) < 1e-9);
    }
}

TEST_CASE("theoretical exponent values and shape") {
    CHECK(theoretical_exponent(0.0) == doctest::Approx(2.0 / 3.0));
    CHECK(theoretical_exponent(0.5) == doctest::Approx(4.0 / 7.0));
    CHECK(theoretical_exponent(-1.0) == doctest::Approx(1.0));
    CHECK(theoretical_exponent(1.0) == doctest::Approx(0.5));
    double prev = 2.0;
    for (int i = 0; i <= 40; ++i) {
        double lambda = -1.0 + 2.0 * i / 40.0;
        double e = theoretical_exponent(lambda);
        CHECK(e < prev);  // strictly decreasing from 1 to 1/2
        prev = e;
    }
    CHECK_THROWS_AS(theoretical_exponent(1.01), std::out_of_range);
    CHECK_THROWS_AS(theoretical_exponent(-1.01), std::out_of_range);
}

TEST_CASE("ordering report counts sign flips; both directions are ordered") {
    NetworkState inc(LatticeTopology::chain(5), 1), dec(LatticeTopology::chain(5), 1);
    for (int r = 0; r < 5; ++r) {
        inc.weight(r)[0] = r;
        dec.weight(r)[0] = -r;
    }
    CHECK(ordering_report(inc).is_ordered);
    CHECK(ordering_report(inc).defects == 0);
    CHECK(ordering_report(dec).is_ordered);

    NetworkState mixed(LatticeTopology::chain(4), 1);
    double w[4] = {0.0, 1.0, 0.5, 2.0};
    for (int r = 0; r < 4; ++r) mixed.weight(r)[0] = w[r];
    auto rep = ordering_report(mixed);
    CHECK(rep.defects == 2);
    CHECK_FALSE(rep.is_ordered);
}

TEST_CASE("defect count is invariant under index reversal") {
    Rng rng(999);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(rng.uniform() * 20);
        std::vector<double> w(static_cast<std::size_t>(n));
        for (auto& x : w) x = rng.uniform();
        auto fwd = ordering_report_weights(w);
        std::vector<double> rev(w.rbegin(), w.rend());
        auto bwd = ordering_report_weights(rev);
        CHECK(fwd.defects == bwd.defects);
    }
}

TEST_CASE("ordering_time finds the first ordered snapshot") {
    Trajectory traj{{}, NetworkState(LatticeTopology::chain(3), 1)};
    traj.snapshots.push_back({0, {0.5, 0.1, 0.9}});     // defective
    traj.snapshots.push_back({100, {0.2, 0.6, 0.4}});   // defective
    traj.snapshots.push_back({200, {0.1, 0.5, 0.9}});   // ordered
    traj.snapshots.push_back({300, {0.1, 0.4, 0.8}});   // ordered
    auto t = ordering_time(traj);
    REQUIRE(t.has_value());
    CHECK(*t == 200);

    Trajectory never{{}, NetworkState(LatticeTopology::chain(3), 1)};
    never.snapshots.push_back({0, {0.5, 0.1, 0.9}});
    CHECK_FALSE(ordering_time(never).has_value());

    Trajectory initial{{}, NetworkState(LatticeTopology::chain(3), 1)};
    initial.snapshots.push_back({0, {0.1, 0.2, 0.3}});
    auto t0 = ordering_time(initial);
    REQUIRE(t0.has_value());
    CHECK(*t0 == 0);
}

TEST_CASE("ordering_time equals an exhaustive scan over snapshots") {
    Rng rng(4041);
    Trajectory traj{{}, NetworkState(LatticeTopology::chain(8), 1)};
    for (int i = 0; i < 64; ++i) {
        std::vector<double> w(8);
        for (auto& x : w) x = rng.uniform();
        if (i > 40 && rng.uniform() < 0.5) std::sort(w.begin(), w.end());
        traj.snapshots.push_back({static_cast<std::uint64_t>(i) * 10, std::move(w)});
    }
    std::optional<std::uint64_t> expected;
    for (const auto& s : traj.snapshots)
        if (!expected && ordering_report_weights(s.weights).is_ordered) expected = s.step;
    CHECK(ordering_time(traj) == expected);
}

TEST_CASE("firing entropy: single neuron, equiprobable quantiles, and the bound") {
    auto p = StimulusDistribution::power_law(1.0, 0.1, 1.0);
    Rng rng(31337);

    NetworkState one(LatticeTopology::chain(1), 1);
    one.weight(0)[0] = 0.4;
    CHECK(firing_entropy(one, p, 1000, rng).entropy == 0.0);

    const int n = 64;
    NetworkState quant(LatticeTopology::chain(n), 1);
    for (int r = 0; r < n; ++r) quant.weight(r)[0] = p.inverse_cdf((r + 0.5) / n);
    auto hist = firing_entropy(quant, p, 100000, rng);
    CHECK(hist.entropy > 0.99 * std::log(n));
    CHECK(hist.entropy <= std::log(n) + 1e-12);

    // skewed map fires unevenly: entropy strictly below ln N
    NetworkState skew(LatticeTopology::chain(n), 1);
    for (int r = 0; r < n; ++r) skew.weight(r)[0] = 0.1 + 0.9 * std::pow((r + 0.5) / n, 3.0);
    auto skew_hist = firing_entropy(skew, p, 100000, rng);
    CHECK(skew_hist.entropy < hist.entropy);

    CHECK_THROWS_AS(firing_entropy(quant, p, 10, rng), std::invalid_argument);
}
