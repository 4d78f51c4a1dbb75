#pragma once

// Sweep configuration: a flat, human-editable key-value format with one
// section per oscillator, an explicit coupling-matrix block, sweep axes and
// solver/simulation options. Unknown sections or keys are errors; a typo
// never silently falls back to a default.
//
//   mode = quantum-detuning
//   seed = 42
//
//   [oscillator 1]
//   kerr = 10
//   gamma = 1            # sets gamma_plus and gamma_minus
//   n_plus = 2
//   n_minus = 3
//   sigma = 0.2          # sets sigma_plus and sigma_minus
//
//   [coupling]
//   row = 0 0.05
//   row = 0.05 0
//
//   [sweep]
//   axis = delta
//   start = -60
//   stop = 60
//   points = 121
//
// '#' starts a comment. The optional [sweep2] section adds an outer axis
// (axis, start/stop/points or values). [solver] and [classical] group the
// numerical options; see the README for the full schema.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kerrsync/classical.hpp"
#include "kerrsync/model.hpp"

namespace kerrsync {

enum class SweepMode {
    QuantumDetuning,
    QuantumAmplitude,
    QuantumKerr,
    QuantumSigma,
    ClassicalDetuning,
    PerturbativeDetuning,
    Network3,
    Network4,
    Minimal3Level,
};

std::string to_string(SweepMode mode);
SweepMode sweep_mode_from_string(const std::string& name);

// One sweep axis: either a uniform grid (start/stop/points) or an explicit
// value list.
struct AxisSpec {
    std::string name;
    std::vector<double> values;
};

struct SolverConfig {
    double residual_tol = 1e-10;
    double tail_max = 1e-2;       // gate on the truncation tail per site
    bool check_degeneracy = false;
    double memory_budget_gb = 8.0;
    int n_phi = 1024;             // phase-distribution grid
    int k_max = -1;               // -1: min(d)-1
};

struct ClassicalConfig {
    double gamma_t = 1.0;
    double n_t = 0.0;
    SimOptions sim;
    int n_bins = 64;
};

// Thrown on parse errors, schema violations and invalid values; the CLI
// maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepConfig {
    SweepMode mode = SweepMode::QuantumDetuning;
    std::uint64_t seed = 0;
    std::string output_path;  // optional; --out overrides

    std::vector<OscillatorParams> oscillators;
    std::vector<int> dims;    // 0 entries resolved by the truncation rule
    Eigen::MatrixXd coupling;
    bool kerr_tracks_sigma = false;  // K = gamma_minus / sigma at each sigma point

    AxisSpec axis;                   // inner (fastest) axis
    std::optional<AxisSpec> axis2;   // outer axis

    SolverConfig solver;
    ClassicalConfig classical;

    // Canonical serialization of every field that was set; hash input.
    std::string canonical;
};

SweepConfig parse_config_text(const std::string& text, const std::string& source);
SweepConfig parse_config_file(const std::string& path);

// Rebuilds `canonical` after a field was changed programmatically (the CLI
// seed override does this).
void refresh_canonical(SweepConfig& config);

// FNV-1a over the canonical serialization: stable across runs and platforms,
// insensitive to comments and whitespace.
std::uint64_t config_hash(const SweepConfig& config);

// Default truncation d = ceil(n_minus) + 1 + 6 for entries where dims is 0.
std::vector<int> resolve_dims(const std::vector<OscillatorParams>& oscillators,
                              const std::vector<int>& dims);

}  // namespace kerrsync
