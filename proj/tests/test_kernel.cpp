#include <cmath>
#include <doctest.h>
#include <vector>

#include "somlab/kernel.hpp"
#include "somlab/lattice.hpp"

using somlab::LatticeTopology;
using somlab::NeighborhoodKernel;

TEST_CASE("kernel is 1 at zero distance for any width") {
    auto chain = LatticeTopology::chain(5);
    for (double gamma : {0.3, 0.8, 2.0, 10.0}) {
        CHECK(NeighborhoodKernel::exact(gamma).value(chain, 2, 2) == 1.0);
        CHECK(NeighborhoodKernel::lookup(gamma).value(chain, 2, 2) == 1.0);
    }
    CHECK(NeighborhoodKernel::from_kappa(0.0).value(chain, 1, 1) == 1.0);
}

TEST_CASE("kappa = 0.25 gives 0.25 at unit distance") {
    auto chain = LatticeTopology::chain(5);
    auto k = NeighborhoodKernel::from_kappa(0.25, NeighborhoodKernel::Mode::kappa_lookup, 1);
    CHECK(k.value(chain, 2, 3) == 0.25);
    CHECK(k.value(chain, 2, 1) == 0.25);
    // same width through the exact route
    auto e = NeighborhoodKernel::from_kappa(0.25);
    CHECK(e.value(chain, 2, 3) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("lookup truncates to zero where exact keeps kappa^(d^2)") {
    auto chain = LatticeTopology::chain(9);
    const double kappa = 0.6;
    auto lk = NeighborhoodKernel::from_kappa(kappa, NeighborhoodKernel::Mode::kappa_lookup, 2);
    auto ex = NeighborhoodKernel::from_kappa(kappa);
    // d = 3 is outside the radius-2 truncation
    CHECK(lk.value(chain, 0, 3) == 0.0);
    CHECK(ex.value(chain, 0, 3) == doctest::Approx(std::pow(kappa, 9.0)).epsilon(1e-14));
    // the modes differ by exactly kappa^9 there; gamma route cross-check
    double gamma = ex.gamma();
    CHECK(ex.value(chain, 0, 3) == doctest::Approx(std::exp(-9.0 / (2.0 * gamma * gamma))).epsilon(1e-12));
    CHECK(ex.value(chain, 0, 3) - lk.value(chain, 0, 3) ==
          doctest::Approx(std::pow(kappa, 9.0)).epsilon(1e-14));
}

TEST_CASE("exact and lookup agree bit for bit inside the truncation radius") {
    auto grid = LatticeTopology::grid(5, 5);
    for (double gamma : {0.5, 0.8, 1.7, 4.0}) {
        auto ex = NeighborhoodKernel::exact(gamma);
        auto lk = NeighborhoodKernel::lookup(gamma, 3);
        for (int r = 0; r < grid.neuron_count(); ++r) {
            for (int s = 0; s < grid.neuron_count(); ++s) {
                auto d2 = grid.squared_distance(r, s);
                if (d2 <= 9) CHECK(ex.value(grid, r, s) == lk.value(grid, r, s));
            }
        }
    }
}

TEST_CASE("kernel symmetry and monotonicity in lattice distance") {
    auto ring = LatticeTopology::ring(8);
    auto grid = LatticeTopology::grid(4, 4);
    for (double gamma : {0.6, 1.5}) {
        for (const auto* topo : {&ring, &grid}) {
            auto k = NeighborhoodKernel::exact(gamma);
            for (int r = 0; r < topo->neuron_count(); ++r)
                for (int s = 0; s < topo->neuron_count(); ++s) {
                    CHECK(k.value(*topo, r, s) == k.value(*topo, s, r));
                    // non-increasing in distance
                    for (int q = 0; q < topo->neuron_count(); ++q)
                        if (topo->squared_distance(r, s) <= topo->squared_distance(r, q))
                            CHECK(k.value(*topo, r, s) >= k.value(*topo, r, q));
                }
        }
    }
}

TEST_CASE("1-D truncation error is bounded by kappa^((R+1)^2)") {
    auto chain = LatticeTopology::chain(16);
    for (double gamma : {0.5, 0.8, 1.2}) {
        for (int radius : {0, 1, 2, 3, 4}) {
            auto ex = NeighborhoodKernel::exact(gamma);
            auto lk = NeighborhoodKernel::lookup(gamma, radius);
            double bound = std::pow(ex.kappa(), double(radius + 1) * (radius + 1));
            double worst = 0.0;
            for (int r = 0; r < 16; ++r)
                for (int s = 0; s < 16; ++s)
                    worst = std::max(worst, std::abs(ex.value(chain, r, s) - lk.value(chain, r, s)));
            CHECK(worst <= bound * (1 + 1e-12));
        }
    }
}

TEST_CASE("2-D truncation error is bounded by kappa^(R^2+1)") {
    // On a 2-D grid the smallest excluded squared distance is R^2 + 1,
    // so that is the sharp bound there.
    auto grid = LatticeTopology::grid(6, 6);
    for (int radius : {1, 2, 3}) {
        auto ex = NeighborhoodKernel::exact(0.9);
        auto lk = NeighborhoodKernel::lookup(0.9, radius);
        double bound = std::pow(ex.kappa(), double(radius * radius + 1));
        double worst = 0.0;
        for (int r = 0; r < grid.neuron_count(); ++r)
            for (int s = 0; s < grid.neuron_count(); ++s)
                worst = std::max(worst, std::abs(ex.value(grid, r, s) - lk.value(grid, r, s)));
        CHECK(worst <= bound * (1 + 1e-12));
    }
}

TEST_CASE("kappa stays in (0,1) for finite widths and rejects bad arguments") {
    for (double gamma : {0.05, 0.8, 50.0}) {
        double kappa = NeighborhoodKernel::exact(gamma).kappa();
        CHECK(kappa > 0.0);
        CHECK(kappa < 1.0);
    }
    CHECK_THROWS_AS(NeighborhoodKernel::exact(0.0), std::invalid_argument);
    CHECK_THROWS_AS(NeighborhoodKernel::exact(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(NeighborhoodKernel::from_kappa(1.0), std::invalid_argument);
    CHECK_THROWS_AS(NeighborhoodKernel::from_kappa(-0.1), std::invalid_argument);
    auto chain = LatticeTopology::chain(3);
    CHECK_THROWS_AS(NeighborhoodKernel::exact(1.0).value(chain, 0, 7), std::out_of_range);
}
