#pragma once

#include <cstdint>

namespace somlab {

/// Exponential annealing trajectories for the learning rate eta(t) and
/// the kernel width gamma(t):
///   x(t) = x_start * (x_end / x_start)^(t / total_steps).
/// total_steps == 0 is allowed and means "no training steps"; the
/// schedule is then only defined at t = 0.
struct LearningSchedule {
    double eta_start = 0.5;
    double eta_end = 0.02;
    double gamma_start = 10.0;
    double gamma_end = 0.8;
    std::uint64_t total_steps = 200000;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct SchedulePoint {
    double eta;
    double gamma;
};

/// Scheduled (eta, gamma) at step t. Throws std::out_of_range unless
/// 0 <= t <= total_steps.
SchedulePoint schedule_at(const LearningSchedule& schedule, std::uint64_t t);

}  // namespace somlab
