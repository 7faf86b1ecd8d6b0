#include "somlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "somlab/errors.hpp"
#include "somlab/io.hpp"

namespace somlab {

namespace {

std::string trim_ws(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim_ws(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim_ws(cur));
    return out;
}

struct KeyValue {
    std::string value;
    bool used = false;
};

using Section = std::map<std::string, KeyValue>;

class ConfigDoc {
public:
    explicit ConfigDoc(const std::string& text) {
        std::istringstream in(text);
        std::string line, section = "";
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim_ws(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
                section = trim_ws(line.substr(1, line.size() - 2));
                if (sections_.count(section) == 0) sections_[section] = {};
                continue;
            }
            std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
            std::string key = trim_ws(line.substr(0, eq));
            std::string value = trim_ws(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
            if (section.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": key '" + key +
                                  "' appears before any [section]");
            auto& sec = sections_[section];
            if (sec.count(key)) throw ConfigError("duplicate key '" + section + "." + key + "'");
            sec[key] = {value, false};
        }
    }

    std::optional<std::string> get(const std::string& section, const std::string& key) {
        auto sit = sections_.find(section);
        if (sit == sections_.end()) return std::nullopt;
        auto kit = sit->second.find(key);
        if (kit == sit->second.end()) return std::nullopt;
        kit->second.used = true;
        return kit->second.value;
    }

    /// After parsing, every provided key must have been consumed.
    void reject_unknown(const std::vector<std::string>& known_sections) const {
        for (const auto& [name, sec] : sections_) {
            if (std::find(known_sections.begin(), known_sections.end(), name) == known_sections.end())
                throw ConfigError("unknown section [" + name + "]");
            for (const auto& [key, kv] : sec)
                if (!kv.used) throw ConfigError("unknown key '" + name + "." + key + "'");
        }
    }

private:
    std::map<std::string, Section> sections_;
};

double parse_real(const std::string& section, const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + section + "." + key + "': expected a real number, got '" + value + "'");
    }
}

std::int64_t parse_int(const std::string& section, const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        // accept scientific notation for large step counts (e.g. 2e5)
        if (value.find_first_of("eE.") != std::string::npos) {
            double x = std::stod(value, &pos);
            if (pos != value.size() || x != std::floor(x)) throw std::invalid_argument("not an integer");
            return static_cast<std::int64_t>(x);
        }
        std::int64_t x = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + section + "." + key + "': expected an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& section, const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("key '" + section + "." + key + "': expected a boolean, got '" + value + "'");
}

std::vector<double> parse_real_list(const std::string& section, const std::string& key,
                                    const std::string& value) {
    std::vector<double> out;
    for (const auto& tok : split(value, ',')) {
        if (tok.empty()) throw ConfigError("key '" + section + "." + key + "': empty list element");
        out.push_back(parse_real(section, key, tok));
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, bool allow_unstable_lambda) {
    ConfigDoc doc(text);
    ExperimentConfig cfg;
    cfg.rule.allow_unstable_lambda = allow_unstable_lambda;

    // [rule]
    if (auto v = doc.get("rule", "rule")) {
        if (*v == "som") cfg.rule.rule = LearningRule::som;
        else if (*v == "gwrk") cfg.rule.rule = LearningRule::gwrk;
        else if (*v == "vq") cfg.rule.rule = LearningRule::vq;
        else throw ConfigError("key 'rule.rule': expected som | gwrk | vq, got '" + *v + "'");
    }
    if (auto v = doc.get("rule", "lambda")) cfg.rule.lambda = parse_real("rule", "lambda", *v);
    if (cfg.rule.rule == LearningRule::gwrk && std::abs(cfg.rule.lambda) > 1.0 && !allow_unstable_lambda)
        throw ConfigError(
            "key 'rule.lambda': value outside the serial stability window [-1, 1]; "
            "pass --allow-unstable-lambda to override");

    // [schedule]
    if (auto v = doc.get("schedule", "eta_start")) cfg.schedule.eta_start = parse_real("schedule", "eta_start", *v);
    if (auto v = doc.get("schedule", "eta_end")) cfg.schedule.eta_end = parse_real("schedule", "eta_end", *v);
    if (auto v = doc.get("schedule", "gamma_start"))
        cfg.schedule.gamma_start = parse_real("schedule", "gamma_start", *v);
    if (auto v = doc.get("schedule", "gamma_end")) cfg.schedule.gamma_end = parse_real("schedule", "gamma_end", *v);
    if (auto v = doc.get("schedule", "total_steps")) {
        std::int64_t t = parse_int("schedule", "total_steps", *v);
        if (t < 0) throw ConfigError("key 'schedule.total_steps': must be >= 0");
        cfg.schedule.total_steps = static_cast<std::uint64_t>(t);
    }
    try {
        cfg.schedule.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("section [schedule]: ") + e.what());
    }

    // [topology]
    {
        int dims = 1;
        if (auto v = doc.get("topology", "dims")) {
            dims = static_cast<int>(parse_int("topology", "dims", *v));
            if (dims < 1 || dims > 2) throw ConfigError("key 'topology.dims': must be 1 or 2");
        }
        std::vector<std::int64_t> sizes{200};
        if (auto v = doc.get("topology", "sizes")) {
            sizes.clear();
            for (const auto& tok : split(*v, 'x')) sizes.push_back(parse_int("topology", "sizes", tok));
        }
        if (static_cast<int>(sizes.size()) != dims)
            throw ConfigError("key 'topology.sizes': expected " + std::to_string(dims) +
                              " axis length(s), e.g. '200' or '20x10'");
        for (auto s : sizes)
            if (s < 1) throw ConfigError("key 'topology.sizes': axis lengths must be >= 1");
        std::vector<bool> periodic(static_cast<std::size_t>(dims), false);
        if (auto v = doc.get("topology", "periodic")) {
            auto toks = split(*v, ',');
            if (toks.size() == 1) {
                bool b = parse_bool("topology", "periodic", toks[0]);
                std::fill(periodic.begin(), periodic.end(), b);
            } else if (static_cast<int>(toks.size()) == dims) {
                for (int d = 0; d < dims; ++d) periodic[static_cast<std::size_t>(d)] = parse_bool("topology", "periodic", toks[static_cast<std::size_t>(d)]);
            } else {
                throw ConfigError("key 'topology.periodic': expected one flag or one per axis");
            }
        }
        try {
            if (dims == 1)
                cfg.topology = periodic[0] ? LatticeTopology::ring(static_cast<int>(sizes[0]))
                                           : LatticeTopology::chain(static_cast<int>(sizes[0]));
            else
                cfg.topology = LatticeTopology::grid(static_cast<int>(sizes[0]), static_cast<int>(sizes[1]),
                                                     periodic[0], periodic[1]);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("section [topology]: ") + e.what());
        }
    }

    // [distribution]
    {
        std::string kind = "powerlaw";
        if (auto v = doc.get("distribution", "kind")) kind = *v;
        int dim = 1;
        if (auto v = doc.get("distribution", "dim")) dim = static_cast<int>(parse_int("distribution", "dim", *v));
        try {
            if (kind == "uniform") {
                double lo = 0.0, hi = 1.0;
                if (auto v = doc.get("distribution", "lo")) lo = parse_real("distribution", "lo", *v);
                if (auto v = doc.get("distribution", "hi")) hi = parse_real("distribution", "hi", *v);
                cfg.distribution = StimulusDistribution::uniform(lo, hi, dim);
            } else if (kind == "powerlaw") {
                double a = 1.0, lo = 0.1, hi = 1.0;
                if (auto v = doc.get("distribution", "a")) a = parse_real("distribution", "a", *v);
                if (auto v = doc.get("distribution", "lo")) lo = parse_real("distribution", "lo", *v);
                if (auto v = doc.get("distribution", "hi")) hi = parse_real("distribution", "hi", *v);
                cfg.distribution = StimulusDistribution::power_law(a, lo, hi, dim);
            } else if (kind == "piecewise") {
                auto bv = doc.get("distribution", "breaks");
                auto wv = doc.get("distribution", "weights");
                if (!bv || !wv)
                    throw ConfigError("piecewise distribution requires 'distribution.breaks' and 'distribution.weights'");
                cfg.distribution = StimulusDistribution::piecewise_constant(
                    parse_real_list("distribution", "breaks", *bv),
                    parse_real_list("distribution", "weights", *wv), dim);
            } else if (kind == "discrete") {
                auto pv = doc.get("distribution", "points");
                if (!pv) throw ConfigError("discrete distribution requires 'distribution.points'");
                std::vector<std::vector<double>> pts;
                for (const auto& ptok : split(*pv, ';'))
                    pts.push_back(parse_real_list("distribution", "points", ptok));
                std::vector<double> probs(pts.size(), 1.0);
                if (auto qv = doc.get("distribution", "probs")) {
                    probs = parse_real_list("distribution", "probs", *qv);
                    if (probs.size() != pts.size())
                        throw ConfigError("key 'distribution.probs': need one probability per point");
                }
                cfg.distribution = StimulusDistribution::discrete(std::move(pts), std::move(probs));
            } else {
                throw ConfigError("key 'distribution.kind': expected uniform | powerlaw | piecewise | discrete");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("section [distribution]: ") + e.what());
        }
    }

    // [analysis]
    if (auto v = doc.get("analysis", "trim")) {
        cfg.trim = static_cast<int>(parse_int("analysis", "trim", *v));
        if (cfg.trim < 1) throw ConfigError("key 'analysis.trim': must be >= 1");
    }
    if (auto v = doc.get("analysis", "probes")) {
        cfg.probes = parse_int("analysis", "probes", *v);
        if (cfg.probes < 1) throw ConfigError("key 'analysis.probes': must be >= 1");
    }

    // [run]
    if (auto v = doc.get("run", "seed"))
        cfg.seed = static_cast<std::uint64_t>(parse_int("run", "seed", *v));
    if (auto v = doc.get("run", "replicates")) {
        cfg.replicates = static_cast<int>(parse_int("run", "replicates", *v));
        if (cfg.replicates < 1) throw ConfigError("key 'run.replicates': must be >= 1");
    }
    if (auto v = doc.get("run", "snapshot_every")) {
        std::int64_t s = parse_int("run", "snapshot_every", *v);
        if (s < 0) throw ConfigError("key 'run.snapshot_every': must be >= 0");
        cfg.snapshot_every = static_cast<std::uint64_t>(s);
    }
    if (auto v = doc.get("run", "init")) {
        if (*v == "ordered") cfg.init = InitMode::ordered;
        else if (*v == "random") cfg.init = InitMode::random_box;
        else throw ConfigError("key 'run.init': expected ordered | random");
    }
    if (auto v = doc.get("run", "kernel")) {
        if (*v == "exact") cfg.kernel_mode = NeighborhoodKernel::Mode::exact_gaussian;
        else if (*v == "lookup") cfg.kernel_mode = NeighborhoodKernel::Mode::kappa_lookup;
        else throw ConfigError("key 'run.kernel': expected exact | lookup");
    }
    if (auto v = doc.get("run", "truncation_radius")) {
        cfg.truncation_radius = static_cast<int>(parse_int("run", "truncation_radius", *v));
        if (cfg.truncation_radius < 0) throw ConfigError("key 'run.truncation_radius': must be >= 0");
    }

    // [output]
    if (auto v = doc.get("output", "path")) cfg.output_path = *v;

    doc.reject_unknown({"rule", "schedule", "topology", "distribution", "analysis", "run", "output"});

    if (cfg.init == InitMode::ordered && cfg.distribution.dimension() != cfg.topology.dims())
        throw ConfigError("ordered init requires distribution.dim == topology.dims; use run.init = random");
    if (cfg.distribution.dimension() < 1)
        throw ConfigError("distribution dimension must be >= 1");
    return cfg;
}

std::string ExperimentConfig::echo() const {
    std::ostringstream out;
    out << "[rule]\n";
    out << "rule = "
        << (rule.rule == LearningRule::som ? "som" : rule.rule == LearningRule::gwrk ? "gwrk" : "vq") << '\n';
    out << "lambda = " << format_double(rule.lambda) << '\n';
    out << "[schedule]\n";
    out << "eta_start = " << format_double(schedule.eta_start) << '\n';
    out << "eta_end = " << format_double(schedule.eta_end) << '\n';
    out << "gamma_start = " << format_double(schedule.gamma_start) << '\n';
    out << "gamma_end = " << format_double(schedule.gamma_end) << '\n';
    out << "total_steps = " << schedule.total_steps << '\n';
    out << "[topology]\n";
    out << "dims = " << topology.dims() << '\n';
    out << "sizes = " << topology.size(0);
    if (topology.dims() == 2) out << 'x' << topology.size(1);
    out << '\n';
    out << "periodic = " << (topology.periodic(0) ? "true" : "false");
    if (topology.dims() == 2) out << ',' << (topology.periodic(1) ? "true" : "false");
    out << '\n';
    out << "[distribution]\n";
    const auto& d = distribution;
    switch (d.kind()) {
        case StimulusDistribution::Kind::uniform:
            out << "kind = uniform\n";
            out << "lo = " << format_double(d.param_lo()) << '\n';
            out << "hi = " << format_double(d.param_hi()) << '\n';
            break;
        case StimulusDistribution::Kind::power_law:
            out << "kind = powerlaw\n";
            out << "a = " << format_double(d.param_exponent()) << '\n';
            out << "lo = " << format_double(d.param_lo()) << '\n';
            out << "hi = " << format_double(d.param_hi()) << '\n';
            break;
        case StimulusDistribution::Kind::piecewise_constant: {
            out << "kind = piecewise\n";
            out << "breaks = ";
            for (std::size_t i = 0; i < d.breakpoints().size(); ++i)
                out << (i ? "," : "") << format_double(d.breakpoints()[i]);
            out << "\nweights = ";
            for (std::size_t i = 0; i < d.segment_weights().size(); ++i)
                out << (i ? "," : "") << format_double(d.segment_weights()[i]);
            out << '\n';
            break;
        }
        case StimulusDistribution::Kind::discrete: {
            out << "kind = discrete\n";
            out << "points = ";
            for (std::size_t mu = 0; mu < d.point_count(); ++mu) {
                if (mu) out << ';';
                auto p = d.point(mu);
                for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << format_double(p[k]);
            }
            out << "\nprobs = ";
            for (std::size_t mu = 0; mu < d.point_count(); ++mu)
                out << (mu ? "," : "") << format_double(d.probability(mu));
            out << '\n';
            break;
        }
    }
    out << "dim = " << d.dimension() << '\n';
    out << "[analysis]\n";
    out << "trim = " << resolved_trim() << '\n';
    out << "probes = " << probes << '\n';
    out << "[run]\n";
    out << "seed = " << seed << '\n';
    out << "replicates = " << replicates << '\n';
    out << "snapshot_every = " << snapshot_every << '\n';
    out << "init = " << (init == InitMode::ordered ? "ordered" : "random") << '\n';
    out << "kernel = " << (kernel_mode == NeighborhoodKernel::Mode::exact_gaussian ? "exact" : "lookup")
        << '\n';
    out << "truncation_radius = " << truncation_radius << '\n';
    // output.path is deliberately not echoed: results must be
    // byte-identical wherever they are written
    return out.str();
}

}  // namespace somlab
