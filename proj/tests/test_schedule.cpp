#include <cmath>
#include <doctest.h>
#include <stdexcept>

#include "somlab/schedule.hpp"

using somlab::LearningSchedule;
using somlab::schedule_at;

TEST_CASE("schedule endpoints are exact") {
    LearningSchedule s{0.5, 0.02, 10.0, 0.8, 200000};
    auto p0 = schedule_at(s, 0);
    CHECK(p0.eta == doctest::Approx(0.5));
    CHECK(p0.gamma == doctest::Approx(10.0));
    auto pT = schedule_at(s, 200000);
    CHECK(pT.eta == doctest::Approx(0.02));
    CHECK(pT.gamma == doctest::Approx(0.8));
}

TEST_CASE("midpoint of an exponential decade-and-a-bit") {
    LearningSchedule s{0.5, 0.05, 1.0, 1.0, 100000};
    auto p = schedule_at(s, 50000);
    CHECK(p.eta == doctest::Approx(0.5 * std::sqrt(0.1)).epsilon(1e-12));  // ~0.1581
}

TEST_CASE("schedule is strictly monotone between distinct endpoints") {
    LearningSchedule s{0.5, 0.02, 10.0, 0.8, 1000};
    double prev_eta = 1.0, prev_gamma = 100.0;
    for (std::uint64_t t = 0; t <= 1000; t += 50) {
        auto p = schedule_at(s, t);
        CHECK(p.eta < prev_eta);
        CHECK(p.gamma < prev_gamma);
        prev_eta = p.eta;
        prev_gamma = p.gamma;
    }
}

TEST_CASE("out-of-range steps and bad fields are rejected") {
    LearningSchedule s{0.5, 0.02, 10.0, 0.8, 100};
    CHECK_THROWS_AS(schedule_at(s, 101), std::out_of_range);
    LearningSchedule bad_eta{0.0, 0.02, 10.0, 0.8, 100};
    CHECK_THROWS_AS(bad_eta.validate(), std::invalid_argument);
    LearningSchedule big_eta{0.5, 1.5, 10.0, 0.8, 100};
    CHECK_THROWS_AS(big_eta.validate(), std::invalid_argument);
    LearningSchedule bad_gamma{0.5, 0.02, 0.0, 0.8, 100};
    CHECK_THROWS_AS(bad_gamma.validate(), std::invalid_argument);
}

TEST_CASE("zero-length schedule yields the start point at t = 0") {
    LearningSchedule s{0.3, 0.1, 2.0, 1.0, 0};
    auto p = schedule_at(s, 0);
    CHECK(p.eta == 0.3);
    CHECK(p.gamma == 2.0);
    CHECK_THROWS_AS(schedule_at(s, 1), std::out_of_range);
}
