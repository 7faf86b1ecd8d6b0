#include "somlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace somlab {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_snapshot(const std::filesystem::path& path, std::uint64_t step,
                    const std::vector<double>& weights, int input_dim) {
    if (input_dim < 1 || weights.size() % static_cast<std::size_t>(input_dim) != 0)
        throw std::invalid_argument("weights size is not a multiple of the input dimension");
    std::string out = std::to_string(step);
    out.push_back('\n');
    const std::size_t rows = weights.size() / static_cast<std::size_t>(input_dim);
    for (std::size_t r = 0; r < rows; ++r) {
        for (int d = 0; d < input_dim; ++d) {
            if (d > 0) out.push_back(' ');
            out += format_double(weights[r * static_cast<std::size_t>(input_dim) + d]);
        }
        out.push_back('\n');
    }
    write_text_file(path, out);
}

SnapshotFile read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open snapshot file " + path.string());
    SnapshotFile snap;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty snapshot file " + path.string());
    snap.step = std::stoull(line);
    snap.input_dim = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::vector<double> w;
        double x;
        while (row >> x) w.push_back(x);
        if (snap.input_dim == 0) snap.input_dim = static_cast<int>(w.size());
        if (static_cast<int>(w.size()) != snap.input_dim)
            throw std::runtime_error("ragged snapshot row in " + path.string());
        snap.weights.push_back(std::move(w));
    }
    if (snap.weights.empty()) throw std::runtime_error("snapshot has no weight rows: " + path.string());
    return snap;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace somlab
