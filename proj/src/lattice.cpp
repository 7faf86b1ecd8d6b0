#include "somlab/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace somlab {

LatticeTopology::LatticeTopology(int dims, std::array<int, 2> sizes, std::array<bool, 2> per)
    : dims_(dims), sizes_(sizes), periodic_(per) {
    if (dims_ < 1 || dims_ > 2) throw std::invalid_argument("lattice dims must be 1 or 2");
    count_ = 1;
    for (int d = 0; d < dims_; ++d) {
        if (sizes_[d] < 1) throw std::invalid_argument("lattice size must be >= 1 per axis");
        count_ *= sizes_[d];
    }
}

LatticeTopology LatticeTopology::chain(int n) { return LatticeTopology(1, {n, 1}, {false, false}); }

LatticeTopology LatticeTopology::ring(int n) { return LatticeTopology(1, {n, 1}, {true, false}); }

LatticeTopology LatticeTopology::grid(int nx, int ny, bool px, bool py) {
    return LatticeTopology(2, {nx, ny}, {px, py});
}

int LatticeTopology::size(int axis) const {
    if (axis < 0 || axis >= dims_) throw std::out_of_range("lattice axis out of range");
    return sizes_[axis];
}

bool LatticeTopology::periodic(int axis) const {
    if (axis < 0 || axis >= dims_) throw std::out_of_range("lattice axis out of range");
    return periodic_[axis];
}

void LatticeTopology::check_index(int r) const {
    if (r < 0 || r >= count_)
        throw std::out_of_range("lattice index " + std::to_string(r) + " out of range [0," +
                                std::to_string(count_) + ")");
}

std::array<int, 2> LatticeTopology::coords(int flat) const {
    check_index(flat);
    if (dims_ == 1) return {flat, 0};
    return {flat % sizes_[0], flat / sizes_[0]};
}

int LatticeTopology::flatten(int x, int y) const {
    if (x < 0 || x >= sizes_[0] || y < 0 || (dims_ == 2 && y >= sizes_[1]) || (dims_ == 1 && y != 0))
        throw std::out_of_range("lattice coordinates out of range");
    return dims_ == 1 ? x : y * sizes_[0] + x;
}

std::int64_t LatticeTopology::squared_distance(int r, int s) const {
    check_index(r);
    check_index(s);
    auto a = coords(r), b = coords(s);
    std::int64_t sum = 0;
    for (int d = 0; d < dims_; ++d) {
        int delta = a[d] - b[d];
        if (delta < 0) delta = -delta;
        if (periodic_[d] && delta > sizes_[d] - delta) delta = sizes_[d] - delta;
        sum += static_cast<std::int64_t>(delta) * delta;
    }
    return sum;
}

double LatticeTopology::distance(int r, int s) const {
    return std::sqrt(static_cast<double>(squared_distance(r, s)));
}

std::int64_t LatticeTopology::max_squared_distance() const {
    std::int64_t sum = 0;
    for (int d = 0; d < dims_; ++d) {
        std::int64_t delta = periodic_[d] ? sizes_[d] / 2 : sizes_[d] - 1;
        sum += delta * delta;
    }
    return sum;
}

}  // namespace somlab
