#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace somlab {

/// Regular 1-D or 2-D neuron lattice with optional periodic wrap per axis.
/// Node spacing is 1 in every axis; flat indices are row-major.
class LatticeTopology {
public:
    static LatticeTopology chain(int n);
    static LatticeTopology ring(int n);
    static LatticeTopology grid(int nx, int ny, bool periodic_x = false, bool periodic_y = false);

    int dims() const { return dims_; }
    int size(int axis) const;
    bool periodic(int axis) const;
    int neuron_count() const { return count_; }

    /// Flat index -> (x[, y]) lattice coordinates.
    std::array<int, 2> coords(int flat) const;
    int flatten(int x, int y = 0) const;

    /// Squared Euclidean lattice distance, minimum image on periodic axes.
    /// Integer-exact: coordinates and wraps are integers.
    std::int64_t squared_distance(int r, int s) const;

    /// Euclidean lattice distance.
    double distance(int r, int s) const;

    /// Largest squared distance between any two nodes (kernel table bound).
    std::int64_t max_squared_distance() const;

    /// Visits flat indices within Euclidean lattice distance `radius` of s
    /// (inclusive), in increasing flat order.
    template <typename F>
    void for_each_within(int s, int radius, F&& fn) const;

private:
    LatticeTopology(int dims, std::array<int, 2> sizes, std::array<bool, 2> per);

    void check_index(int r) const;

    int dims_;
    std::array<int, 2> sizes_;
    std::array<bool, 2> periodic_;
    int count_;
};

template <typename F>
void LatticeTopology::for_each_within(int s, int radius, F&& fn) const {
    check_index(s);
    const std::int64_t r2 = static_cast<std::int64_t>(radius) * radius;
    auto c = coords(s);
    if (dims_ == 1) {
        if (!periodic_[0] || 2 * radius + 1 >= sizes_[0]) {
            if (periodic_[0]) {
                for (int x = 0; x < sizes_[0]; ++x)
                    if (squared_distance(s, x) <= r2) fn(x);
                return;
            }
            int lo = c[0] - radius, hi = c[0] + radius;
            if (lo < 0) lo = 0;
            if (hi > sizes_[0] - 1) hi = sizes_[0] - 1;
            for (int x = lo; x <= hi; ++x) fn(x);
        } else {
            // wrapped window; emit in flat order
            std::vector<int> idx;
            idx.reserve(2 * radius + 1);
            for (int d = -radius; d <= radius; ++d) {
                int x = (c[0] + d) % sizes_[0];
                if (x < 0) x += sizes_[0];
                idx.push_back(x);
            }
            std::sort(idx.begin(), idx.end());
            idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
            for (int x : idx) fn(x);
        }
        return;
    }
    // 2-D: scan the bounding box, filter by distance
    for (int y = 0; y < sizes_[1]; ++y) {
        for (int x = 0; x < sizes_[0]; ++x) {
            int flat = flatten(x, y);
            if (squared_distance(s, flat) <= r2) fn(flat);
        }
    }
}

}  // namespace somlab
