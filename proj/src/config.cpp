#include "kerrsync/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace kerrsync {

namespace {

struct RawEntry {
    std::string key;
    std::string value;
    int line = 0;
    bool consumed = false;
};

struct RawSection {
    std::string name;   // "" for keys before the first section header
    int index = 0;      // [oscillator 2] -> name "oscillator", index 2
    int line = 0;
    std::vector<RawEntry> entries;
};

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
    throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<RawSection> tokenize(const std::string& text, const std::string& source) {
    std::vector<RawSection> sections;
    sections.push_back({"", 0, 0, {}});
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(source, line_no, "unterminated section header");
            std::string name = trim(line.substr(1, line.size() - 2));
            int index = 0;
            const auto space = name.find(' ');
            if (space != std::string::npos) {
                const std::string tail = trim(name.substr(space + 1));
                name = trim(name.substr(0, space));
                try {
                    index = std::stoi(tail);
                } catch (...) {
                    fail(source, line_no, "section index '" + tail + "' is not an integer");
                }
            }
            sections.push_back({name, index, line_no, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(source, line_no, "expected 'key = value'");
        RawEntry entry;
        entry.key = trim(line.substr(0, eq));
        entry.value = trim(line.substr(eq + 1));
        entry.line = line_no;
        if (entry.key.empty()) fail(source, line_no, "empty key");
        if (entry.value.empty()) fail(source, line_no, "empty value for key '" + entry.key + "'");
        sections.back().entries.push_back(entry);
    }
    return sections;
}

double parse_double(const RawEntry& e, const std::string& source) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(e.value, &pos);
    } catch (...) {
        fail(source, e.line, "value of '" + e.key + "' is not a number");
    }
    if (pos != e.value.size())
        fail(source, e.line, "trailing characters in value of '" + e.key + "'");
    return v;
}

long parse_int(const RawEntry& e, const std::string& source) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(e.value, &pos);
    } catch (...) {
        fail(source, e.line, "value of '" + e.key + "' is not an integer");
    }
    if (pos != e.value.size())
        fail(source, e.line, "value of '" + e.key + "' is not an integer");
    return v;
}

bool parse_bool(const RawEntry& e, const std::string& source) {
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    fail(source, e.line, "value of '" + e.key + "' must be true/false");
}

std::vector<double> parse_double_list(const RawEntry& e, const std::string& source) {
    std::istringstream in(e.value);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument("");
        } catch (...) {
            fail(source, e.line, "entry '" + tok + "' in '" + e.key + "' is not a number");
        }
    }
    if (out.empty()) fail(source, e.line, "empty list for key '" + e.key + "'");
    return out;
}

// Access wrapper that marks keys consumed so leftovers can be rejected.
class SectionReader {
  public:
    SectionReader(RawSection& section, std::string source)
        : section_(section), source_(std::move(source)) {}

    RawEntry* find(const std::string& key) {
        RawEntry* found = nullptr;
        for (auto& e : section_.entries) {
            if (e.key != key) continue;
            if (found)
                fail(source_, e.line, "duplicate key '" + key + "'");
            found = &e;
        }
        if (found) found->consumed = true;
        return found;
    }

    std::optional<double> number(const std::string& key) {
        RawEntry* e = find(key);
        if (!e) return std::nullopt;
        return parse_double(*e, source_);
    }

    std::optional<long> integer(const std::string& key) {
        RawEntry* e = find(key);
        if (!e) return std::nullopt;
        return parse_int(*e, source_);
    }

    std::optional<bool> boolean(const std::string& key) {
        RawEntry* e = find(key);
        if (!e) return std::nullopt;
        return parse_bool(*e, source_);
    }

    std::optional<std::string> text(const std::string& key) {
        RawEntry* e = find(key);
        if (!e) return std::nullopt;
        return e->value;
    }

    std::optional<std::vector<double>> list(const std::string& key) {
        RawEntry* e = find(key);
        if (!e) return std::nullopt;
        return parse_double_list(*e, source_);
    }

    std::vector<std::vector<double>> repeated_lists(const std::string& key) {
        std::vector<std::vector<double>> out;
        for (auto& e : section_.entries)
            if (e.key == key) {
                e.consumed = true;
                out.push_back(parse_double_list(e, source_));
            }
        return out;
    }

    void reject_unknown() const {
        for (const auto& e : section_.entries)
            if (!e.consumed) {
                const std::string where =
                    section_.name.empty() ? "top level" : "section [" + section_.name + "]";
                fail(source_, e.line, "unknown key '" + e.key + "' in " + where);
            }
    }

  private:
    RawSection& section_;
    std::string source_;
};

int expected_oscillators(SweepMode mode) {
    switch (mode) {
        case SweepMode::Network3: return 3;
        case SweepMode::Network4: return 4;
        default: return 2;
    }
}

bool axis_allowed(SweepMode mode, const std::string& axis) {
    if (axis == "delta") return true;
    switch (mode) {
        case SweepMode::QuantumAmplitude: return axis == "n2_plus" || axis == "v";
        case SweepMode::QuantumKerr: return axis == "kerr" || axis == "v";
        case SweepMode::QuantumSigma: return axis == "sigma" || axis == "v";
        case SweepMode::Network3: return axis == "v1" || axis == "v2";
        case SweepMode::Network4: return axis == "v";
        case SweepMode::Minimal3Level: return axis == "kerr" || axis == "v";
        case SweepMode::QuantumDetuning:
        case SweepMode::PerturbativeDetuning:
        case SweepMode::ClassicalDetuning: return axis == "v";
    }
    return false;
}

AxisSpec parse_axis(RawSection& section, const std::string& source, SweepMode mode) {
    SectionReader reader(section, source);
    AxisSpec axis;
    auto name = reader.text("axis");
    if (!name) fail(source, section.line, "sweep section needs an 'axis' key");
    axis.name = *name;
    if (!axis_allowed(mode, axis.name))
        fail(source, section.line,
             "axis '" + axis.name + "' is not valid for mode " + to_string(mode));
    const auto values = reader.list("values");
    const auto start = reader.number("start");
    const auto stop = reader.number("stop");
    const auto points = reader.integer("points");
    if (values) {
        if (start || stop || points)
            fail(source, section.line, "give either 'values' or start/stop/points, not both");
        axis.values = *values;
    } else {
        if (!start || !stop || !points)
            fail(source, section.line, "sweep needs 'values' or all of start/stop/points");
        if (*points < 1) fail(source, section.line, "'points' must be >= 1");
        for (long i = 0; i < *points; ++i)
            axis.values.push_back(*points == 1
                                      ? *start
                                      : *start + (*stop - *start) * double(i) / double(*points - 1));
    }
    reader.reject_unknown();
    return axis;
}

void append_kv(std::string& out, const std::string& key, const std::string& value) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string canonical_serialization(const SweepConfig& c) {
    std::string out;
    append_kv(out, "mode", to_string(c.mode));
    append_kv(out, "seed", std::to_string(c.seed));
    append_kv(out, "kerr_tracks_sigma", c.kerr_tracks_sigma ? "1" : "0");
    for (std::size_t j = 0; j < c.oscillators.size(); ++j) {
        const OscillatorParams& p = c.oscillators[j];
        const std::string prefix = "oscillator" + std::to_string(j + 1) + ".";
        append_kv(out, prefix + "omega", fmt(p.omega));
        append_kv(out, prefix + "kerr", fmt(p.kerr));
        append_kv(out, prefix + "gamma_plus", fmt(p.gamma_plus));
        append_kv(out, prefix + "gamma_minus", fmt(p.gamma_minus));
        append_kv(out, prefix + "n_plus", fmt(p.n_plus));
        append_kv(out, prefix + "n_minus", fmt(p.n_minus));
        append_kv(out, prefix + "sigma_plus", fmt(p.sigma_plus));
        append_kv(out, prefix + "sigma_minus", fmt(p.sigma_minus));
        append_kv(out, prefix + "dim", std::to_string(c.dims[j]));
    }
    for (Eigen::Index j = 0; j < c.coupling.rows(); ++j) {
        std::string row;
        for (Eigen::Index k = 0; k < c.coupling.cols(); ++k) {
            if (k) row += ' ';
            row += fmt(c.coupling(j, k));
        }
        append_kv(out, "coupling.row" + std::to_string(j + 1), row);
    }
    auto axis_block = [&](const char* label, const AxisSpec& axis) {
        std::string vals;
        for (std::size_t i = 0; i < axis.values.size(); ++i) {
            if (i) vals += ' ';
            vals += fmt(axis.values[i]);
        }
        append_kv(out, std::string(label) + ".axis", axis.name);
        append_kv(out, std::string(label) + ".values", vals);
    };
    axis_block("sweep", c.axis);
    if (c.axis2) axis_block("sweep2", *c.axis2);
    append_kv(out, "solver.residual_tol", fmt(c.solver.residual_tol));
    append_kv(out, "solver.tail_max", fmt(c.solver.tail_max));
    append_kv(out, "solver.check_degeneracy", c.solver.check_degeneracy ? "1" : "0");
    append_kv(out, "solver.memory_budget_gb", fmt(c.solver.memory_budget_gb));
    append_kv(out, "solver.n_phi", std::to_string(c.solver.n_phi));
    append_kv(out, "solver.k_max", std::to_string(c.solver.k_max));
    append_kv(out, "classical.gamma_t", fmt(c.classical.gamma_t));
    append_kv(out, "classical.n_t", fmt(c.classical.n_t));
    append_kv(out, "classical.dt", fmt(c.classical.sim.dt));
    append_kv(out, "classical.t_burn", fmt(c.classical.sim.t_burn));
    append_kv(out, "classical.t_sample", fmt(c.classical.sim.t_sample));
    append_kv(out, "classical.dt_sample", fmt(c.classical.sim.dt_sample));
    append_kv(out, "classical.n_traj", std::to_string(c.classical.sim.n_traj));
    append_kv(out, "classical.n_bins", std::to_string(c.classical.n_bins));
    return out;
}

}  // namespace

std::string to_string(SweepMode mode) {
    switch (mode) {
        case SweepMode::QuantumDetuning: return "quantum-detuning";
        case SweepMode::QuantumAmplitude: return "quantum-amplitude";
        case SweepMode::QuantumKerr: return "quantum-kerr";
        case SweepMode::QuantumSigma: return "quantum-sigma";
        case SweepMode::ClassicalDetuning: return "classical-detuning";
        case SweepMode::PerturbativeDetuning: return "perturbative-detuning";
        case SweepMode::Network3: return "network3";
        case SweepMode::Network4: return "network4";
        case SweepMode::Minimal3Level: return "minimal-3level";
    }
    return "unknown";
}

SweepMode sweep_mode_from_string(const std::string& name) {
    for (SweepMode mode :
         {SweepMode::QuantumDetuning, SweepMode::QuantumAmplitude, SweepMode::QuantumKerr,
          SweepMode::QuantumSigma, SweepMode::ClassicalDetuning,
          SweepMode::PerturbativeDetuning, SweepMode::Network3, SweepMode::Network4,
          SweepMode::Minimal3Level})
        if (to_string(mode) == name) return mode;
    throw ConfigError("unknown mode '" + name + "'");
}

std::vector<int> resolve_dims(const std::vector<OscillatorParams>& oscillators,
                              const std::vector<int>& dims) {
    std::vector<int> out = dims;
    out.resize(oscillators.size(), 0);
    for (std::size_t j = 0; j < oscillators.size(); ++j)
        if (out[j] == 0)
            out[j] = static_cast<int>(std::ceil(oscillators[j].n_minus)) + 1 + 6;
    return out;
}

SweepConfig parse_config_text(const std::string& text, const std::string& source) {
    std::vector<RawSection> sections = tokenize(text, source);
    SweepConfig config;

    // Top-level keys.
    {
        SectionReader top(sections.front(), source);
        auto mode = top.text("mode");
        if (!mode) throw ConfigError(source + ": missing required key 'mode'");
        config.mode = sweep_mode_from_string(*mode);
        if (auto seed = top.integer("seed")) config.seed = static_cast<std::uint64_t>(*seed);
        if (auto out = top.text("out")) config.output_path = *out;
        if (auto t = top.boolean("kerr_tracks_sigma")) config.kerr_tracks_sigma = *t;
        top.reject_unknown();
    }

    const int n_osc = expected_oscillators(config.mode);
    config.oscillators.resize(n_osc);
    config.dims.assign(n_osc, 0);
    config.coupling = Eigen::MatrixXd::Zero(n_osc, n_osc);

    std::vector<bool> seen_osc(n_osc, false);
    bool seen_sweep = false;
    bool seen_coupling = false;
    bool seen_solver = false;
    bool seen_classical = false;
    auto once = [&](bool& seen, const RawSection& section) {
        if (seen) fail(source, section.line, "duplicate section [" + section.name + "]");
        seen = true;
    };
    for (std::size_t si = 1; si < sections.size(); ++si) {
        RawSection& section = sections[si];
        if (section.name == "oscillator") {
            const int idx = section.index;
            if (idx < 1 || idx > n_osc)
                fail(source, section.line,
                     "mode " + to_string(config.mode) + " expects oscillators 1.." +
                         std::to_string(n_osc));
            if (seen_osc[idx - 1])
                fail(source, section.line, "duplicate section [oscillator " +
                                               std::to_string(idx) + "]");
            seen_osc[idx - 1] = true;
            SectionReader reader(section, source);
            OscillatorParams& p = config.oscillators[idx - 1];
            if (auto v = reader.number("omega")) p.omega = *v;
            if (auto v = reader.number("kerr")) p.kerr = *v;
            const auto gamma = reader.number("gamma");
            const auto gamma_plus = reader.number("gamma_plus");
            const auto gamma_minus = reader.number("gamma_minus");
            if (gamma && (gamma_plus || gamma_minus))
                fail(source, section.line, "give 'gamma' or gamma_plus/gamma_minus, not both");
            p.gamma_plus = gamma_plus.value_or(gamma.value_or(1.0));
            p.gamma_minus = gamma_minus.value_or(gamma.value_or(1.0));
            const auto n_plus = reader.number("n_plus");
            if (!n_plus) fail(source, section.line, "oscillator needs 'n_plus'");
            p.n_plus = *n_plus;
            p.n_minus = reader.number("n_minus").value_or(p.n_plus + 1.0);
            const auto sigma = reader.number("sigma");
            const auto sigma_plus = reader.number("sigma_plus");
            const auto sigma_minus = reader.number("sigma_minus");
            if (sigma && (sigma_plus || sigma_minus))
                fail(source, section.line, "give 'sigma' or sigma_plus/sigma_minus, not both");
            if (!sigma && !(sigma_plus && sigma_minus))
                fail(source, section.line, "oscillator needs 'sigma' (or both sigma_plus/sigma_minus)");
            p.sigma_plus = sigma_plus.value_or(sigma.value_or(0.0));
            p.sigma_minus = sigma_minus.value_or(sigma.value_or(0.0));
            if (auto v = reader.integer("dim")) {
                if (*v < 2) fail(source, section.line, "'dim' must be >= 2");
                config.dims[idx - 1] = static_cast<int>(*v);
            }
            reader.reject_unknown();
            try {
                validate(p);
            } catch (const std::exception& err) {
                fail(source, section.line, err.what());
            }
        } else if (section.name == "coupling") {
            once(seen_coupling, section);
            SectionReader reader(section, source);
            const auto rows = reader.repeated_lists("row");
            reader.reject_unknown();
            if (static_cast<int>(rows.size()) != n_osc)
                fail(source, section.line,
                     "coupling needs " + std::to_string(n_osc) + " 'row' entries");
            for (int j = 0; j < n_osc; ++j) {
                if (static_cast<int>(rows[j].size()) != n_osc)
                    fail(source, section.line,
                         "coupling row " + std::to_string(j + 1) + " needs " +
                             std::to_string(n_osc) + " entries");
                for (int k = 0; k < n_osc; ++k) config.coupling(j, k) = rows[j][k];
            }
            for (int j = 0; j < n_osc; ++j) {
                if (config.coupling(j, j) != 0.0)
                    fail(source, section.line, "coupling diagonal must be zero");
                for (int k = 0; k < n_osc; ++k)
                    if (config.coupling(j, k) != config.coupling(k, j))
                        fail(source, section.line, "coupling matrix must be symmetric");
            }
        } else if (section.name == "sweep") {
            if (seen_sweep) fail(source, section.line, "duplicate [sweep] section");
            seen_sweep = true;
            config.axis = parse_axis(section, source, config.mode);
        } else if (section.name == "sweep2") {
            if (config.axis2) fail(source, section.line, "duplicate [sweep2] section");
            config.axis2 = parse_axis(section, source, config.mode);
        } else if (section.name == "solver") {
            once(seen_solver, section);
            SectionReader reader(section, source);
            SolverConfig& s = config.solver;
            if (auto v = reader.number("residual_tol")) s.residual_tol = *v;
            if (auto v = reader.number("tail_max")) s.tail_max = *v;
            if (auto v = reader.boolean("check_degeneracy")) s.check_degeneracy = *v;
            if (auto v = reader.number("memory_budget_gb")) s.memory_budget_gb = *v;
            if (auto v = reader.integer("n_phi")) s.n_phi = static_cast<int>(*v);
            if (auto v = reader.integer("k_max")) s.k_max = static_cast<int>(*v);
            reader.reject_unknown();
        } else if (section.name == "classical") {
            once(seen_classical, section);
            SectionReader reader(section, source);
            ClassicalConfig& c = config.classical;
            if (auto v = reader.number("gamma_t")) c.gamma_t = *v;
            if (auto v = reader.number("n_t")) c.n_t = *v;
            if (auto v = reader.number("dt")) c.sim.dt = *v;
            if (auto v = reader.number("t_burn")) c.sim.t_burn = *v;
            if (auto v = reader.number("t_sample")) c.sim.t_sample = *v;
            if (auto v = reader.number("dt_sample")) c.sim.dt_sample = *v;
            if (auto v = reader.integer("n_traj")) c.sim.n_traj = static_cast<int>(*v);
            if (auto v = reader.integer("n_bins")) c.n_bins = static_cast<int>(*v);
            reader.reject_unknown();
        } else {
            fail(source, section.line, "unknown section [" + section.name + "]");
        }
    }

    for (int j = 0; j < n_osc; ++j)
        if (!seen_osc[j])
            throw ConfigError(source + ": missing section [oscillator " +
                              std::to_string(j + 1) + "]");
    if (!seen_sweep) throw ConfigError(source + ": missing [sweep] section");
    if (config.axis2 && config.axis2->name == config.axis.name)
        throw ConfigError(source + ": sweep and sweep2 use the same axis");

    config.canonical = canonical_serialization(config);
    return config;
}

SweepConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

void refresh_canonical(SweepConfig& config) {
    config.canonical = canonical_serialization(config);
}

std::uint64_t config_hash(const SweepConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : config.canonical) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace kerrsync
