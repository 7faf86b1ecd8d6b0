#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace somlab {

/// Shortest round-trip decimal form (17 significant digits), locale
/// independent; "nan" for NaN so CSV stays machine-parseable.
std::string format_double(double x);

struct SnapshotFile {
    std::uint64_t step;
    int input_dim;
    std::vector<std::vector<double>> weights;
};

/// Snapshot format: first line the step counter, then one line per neuron
/// holding its input-space components separated by single spaces, full
/// double precision.
void write_snapshot(const std::filesystem::path& path, std::uint64_t step,
                    const std::vector<double>& weights, int input_dim);
SnapshotFile read_snapshot(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace somlab
