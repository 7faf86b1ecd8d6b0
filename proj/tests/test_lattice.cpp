#include <cmath>
#include <doctest.h>
#include <stdexcept>
#include <vector>

#include "somlab/lattice.hpp"

using somlab::LatticeTopology;

TEST_CASE("distance is zero iff identical and symmetric on small lattices") {
    for (const auto& topo : {LatticeTopology::chain(7), LatticeTopology::ring(7),
                             LatticeTopology::grid(4, 5), LatticeTopology::grid(4, 4, true, true)}) {
        for (int r = 0; r < topo.neuron_count(); ++r) {
            for (int s = 0; s < topo.neuron_count(); ++s) {
                CHECK(topo.squared_distance(r, s) == topo.squared_distance(s, r));
                if (r == s)
                    CHECK(topo.squared_distance(r, s) == 0);
                else
                    CHECK(topo.squared_distance(r, s) > 0);
            }
        }
    }
}

TEST_CASE("ring wraparound uses the minimum image") {
    auto ring = LatticeTopology::ring(10);
    CHECK(ring.distance(0, 9) == doctest::Approx(1.0));
    CHECK(ring.distance(0, 5) == doctest::Approx(5.0));
    CHECK(ring.distance(2, 8) == doctest::Approx(4.0));
}

TEST_CASE("open 4x4 grid corner-to-corner distance is sqrt(18)") {
    auto grid = LatticeTopology::grid(4, 4);
    int a = grid.flatten(0, 0), b = grid.flatten(3, 3);
    CHECK(grid.distance(a, b) == doctest::Approx(std::sqrt(18.0)));
}

TEST_CASE("periodic grid distances wrap per axis") {
    auto grid = LatticeTopology::grid(6, 4, true, false);
    int a = grid.flatten(0, 0), b = grid.flatten(5, 3);
    // x wraps to 1, y stays 3
    CHECK(grid.squared_distance(a, b) == 1 + 9);
}

TEST_CASE("invalid indices raise out_of_range") {
    auto chain = LatticeTopology::chain(5);
    CHECK_THROWS_AS(chain.squared_distance(0, 5), std::out_of_range);
    CHECK_THROWS_AS(chain.squared_distance(-1, 0), std::out_of_range);
    CHECK_THROWS_AS(chain.coords(17), std::out_of_range);
    CHECK_THROWS_AS(LatticeTopology::chain(0), std::invalid_argument);
}

TEST_CASE("for_each_within visits exactly the in-radius nodes in flat order") {
    for (const auto& topo : {LatticeTopology::chain(9), LatticeTopology::ring(9),
                             LatticeTopology::grid(5, 4, true, false)}) {
        for (int s = 0; s < topo.neuron_count(); ++s) {
            for (int radius : {0, 1, 2, 3}) {
                std::vector<int> got;
                topo.for_each_within(s, radius, [&](int r) { got.push_back(r); });
                std::vector<int> want;
                for (int r = 0; r < topo.neuron_count(); ++r)
                    if (topo.squared_distance(s, r) <= static_cast<std::int64_t>(radius) * radius)
                        want.push_back(r);
                CHECK(got == want);
            }
        }
    }
}
