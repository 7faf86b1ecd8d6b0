#include "somlab/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace somlab {

void LearningSchedule::validate() const {
    auto rate_ok = [](double x) { return x > 0.0 && x <= 1.0 && std::isfinite(x); };
    if (!rate_ok(eta_start) || !rate_ok(eta_end))
        throw std::invalid_argument("learning rates must lie in (0, 1]");
    if (!(gamma_start > 0.0) || !(gamma_end > 0.0) || !std::isfinite(gamma_start) || !std::isfinite(gamma_end))
        throw std::invalid_argument("kernel widths must be > 0");
}

SchedulePoint schedule_at(const LearningSchedule& schedule, std::uint64_t t) {
    schedule.validate();
    if (t > schedule.total_steps) throw std::out_of_range("schedule step outside [0, total_steps]");
    if (schedule.total_steps == 0) return {schedule.eta_start, schedule.gamma_start};
    double frac = static_cast<double>(t) / static_cast<double>(schedule.total_steps);
    double eta = schedule.eta_start * std::pow(schedule.eta_end / schedule.eta_start, frac);
    double gamma = schedule.gamma_start * std::pow(schedule.gamma_end / schedule.gamma_start, frac);
    return {eta, gamma};
}

}  // namespace somlab
