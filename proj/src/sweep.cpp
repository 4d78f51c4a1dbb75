#include "kerrsync/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "kerrsync/classical.hpp"
#include "kerrsync/liouvillian.hpp"
#include "kerrsync/perturbation.hpp"
#include "kerrsync/steadystate.hpp"
#include "kerrsync/sync_measure.hpp"

namespace kerrsync {

namespace {

constexpr double nan_cell = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::vector<std::string> columns_for(SweepMode mode) {
    switch (mode) {
        case SweepMode::QuantumDetuning:
            return {"delta_over_gamma", "v_over_gamma",
                    "S", "S_over_V", "residual", "tail_population", "error"};
        case SweepMode::QuantumAmplitude:
            return {"n2_plus", "delta_over_gamma", "v_over_gamma",
                    "S", "S_over_V", "residual", "tail_population", "error"};
        case SweepMode::QuantumKerr:
        case SweepMode::Minimal3Level:
            return {"kerr_over_gamma", "delta_over_gamma", "v_over_gamma",
                    "S", "S_over_V", "residual", "tail_population", "error"};
        case SweepMode::QuantumSigma:
            return {"sigma", "delta_over_gamma", "v_over_gamma",
                    "S", "S_over_V", "residual", "tail_population", "error"};
        case SweepMode::PerturbativeDetuning:
            return {"delta_over_gamma", "v_over_gamma", "S", "S_over_V", "error"};
        case SweepMode::ClassicalDetuning:
            return {"delta_over_gamma", "v_over_gamma",
                    "S", "S_stderr", "n_samples", "n_unstable", "error"};
        case SweepMode::Network3:
            return {"delta_over_gamma", "v1_over_gamma", "v2_over_gamma",
                    "S_AB", "S_AC", "S_BC", "residual", "tail_population", "error"};
        case SweepMode::Network4:
            return {"delta_over_gamma", "v_over_gamma",
                    "S_AB", "S_AC", "S_BC", "residual", "tail_population", "error"};
    }
    throw std::logic_error("unreachable mode");
}

// Materialized parameters of one grid point after axis substitution.
struct PointParams {
    std::vector<OscillatorParams> oscillators;
    Eigen::MatrixXd coupling;
    std::vector<int> dims;
};

void apply_axis(const SweepConfig& config, const std::string& name, double value,
                PointParams& point) {
    auto& osc = point.oscillators;
    auto set_edge = [&](int j, int k, double v) {
        point.coupling(j, k) = v;
        point.coupling(k, j) = v;
    };
    if (name == "delta") {
        // delta = omega_1 - omega_2: the detuned site(s) move to -delta.
        switch (config.mode) {
            case SweepMode::Network3: osc[2].omega = -value; break;
            case SweepMode::Network4:
                osc[1].omega = -value;
                osc[3].omega = -value;
                break;
            default:
                osc[0].omega = 0.0;
                osc[1].omega = -value;
        }
    } else if (name == "v") {
        if (config.mode == SweepMode::Network4) {
            set_edge(0, 1, value);
            set_edge(1, 2, value);
            set_edge(2, 3, value);
            set_edge(3, 0, value);
        } else {
            set_edge(0, 1, value);
        }
    } else if (name == "v1") {
        set_edge(0, 2, value);
        set_edge(1, 2, value);
    } else if (name == "v2") {
        set_edge(0, 1, value);
    } else if (name == "n2_plus") {
        osc[1].n_plus = value;
        osc[1].n_minus = value + 1.0;
    } else if (name == "kerr") {
        for (auto& p : osc) p.kerr = value;
    } else if (name == "sigma") {
        for (auto& p : osc) {
            p.sigma_plus = value;
            p.sigma_minus = value;
            if (config.kerr_tracks_sigma) p.kerr = p.gamma_minus / value;
        }
    } else {
        throw std::logic_error("unhandled axis '" + name + "'");
    }
}

PointParams materialize(const SweepConfig& config, double inner, std::optional<double> outer) {
    PointParams point{config.oscillators, config.coupling, {}};
    if (outer) apply_axis(config, config.axis2->name, *outer, point);
    apply_axis(config, config.axis.name, inner, point);
    std::vector<int> dims = config.dims;
    if (config.mode == SweepMode::Minimal3Level)
        for (int& d : dims)
            if (d == 0) d = 3;
    point.dims = resolve_dims(point.oscillators, dims);
    return point;
}

double delta_of(const SweepConfig& config, const PointParams& point) {
    switch (config.mode) {
        case SweepMode::Network3: return -point.oscillators[2].omega;
        case SweepMode::Network4: return -point.oscillators[1].omega;
        default: return point.oscillators[0].omega - point.oscillators[1].omega;
    }
}

// Sweep coordinates, the leading cells of every row; valid even for points
// whose evaluation failed.
std::vector<double> coordinates_of(const SweepConfig& config, const PointParams& point) {
    const double gamma_ref = config.oscillators[0].gamma_minus;
    const double delta = delta_of(config, point) / gamma_ref;
    switch (config.mode) {
        case SweepMode::QuantumAmplitude:
            return {point.oscillators[1].n_plus, delta,
                    point.coupling(0, 1) / gamma_ref};
        case SweepMode::QuantumKerr:
        case SweepMode::Minimal3Level:
            return {point.oscillators[0].kerr / gamma_ref, delta,
                    point.coupling(0, 1) / gamma_ref};
        case SweepMode::QuantumSigma:
            return {point.oscillators[0].sigma_plus, delta,
                    point.coupling(0, 1) / gamma_ref};
        case SweepMode::Network3:
            return {delta, point.coupling(0, 2) / gamma_ref,
                    point.coupling(0, 1) / gamma_ref};
        default:
            return {delta, point.coupling(0, 1) / gamma_ref};
    }
}

// Result cells following the coordinates; the trailing error flag is 0.
std::vector<double> evaluate_point(const SweepConfig& config, const PointParams& point,
                                   std::size_t index) {
    const SolverConfig& sol = config.solver;
    auto over_v = [](double s, double v) { return v != 0.0 ? s / v : nan_cell; };

    if (config.mode == SweepMode::PerturbativeDetuning) {
        const double v = point.coupling(0, 1);
        const double s = perturbative_sync(point.oscillators[0], point.oscillators[1], v,
                                           point.dims[0], point.dims[1]);
        return {s, over_v(s, v), 0.0};
    }

    NetworkSpec net;
    net.oscillators = point.oscillators;
    net.coupling = point.coupling;
    net.layout = make_layout(point.dims);

    if (config.mode == SweepMode::ClassicalDetuning) {
        NoiseParams noise{config.classical.gamma_t, config.classical.n_t,
                          splitmix64(config.seed + static_cast<std::uint64_t>(index))};
        const SampledPhases samples = simulate(net, noise, config.classical.sim);
        const PhaseHistogram hist =
            classical_phase_histogram(samples, config.classical.n_bins);
        return {hist.s_measure, hist.s_stderr, double(hist.n_samples),
                double(samples.n_unstable), 0.0};
    }

    const SparseOp gen = build_network_liouvillian(net, sol.memory_budget_gb);
    SolveInfo info;
    SolveOptions opts;
    opts.residual_tol = sol.residual_tol;
    opts.check_degeneracy = sol.check_degeneracy;
    const DensityMatrix dm = solve_steady_state(gen, net.layout, opts, &info);
    if (info.degenerate)
        throw std::runtime_error("steady state is not unique (degeneracy probe)");
    const std::vector<double> tails = truncation_residual(dm);
    const double tail = *std::max_element(tails.begin(), tails.end());
    // In the hard-truncated mode the cutoff is part of the model, so the
    // tail is reported but not gated.
    if (config.mode != SweepMode::Minimal3Level && tail > sol.tail_max)
        throw std::runtime_error("truncation tail " + std::to_string(tail) +
                                 " exceeds tail_max " + std::to_string(sol.tail_max) +
                                 "; raise dims");

    if (config.mode == SweepMode::Network3 || config.mode == SweepMode::Network4) {
        const double s_ab = pairwise_sync(dm, 0, 1, sol.k_max, sol.n_phi);
        const double s_ac = pairwise_sync(dm, 0, 2, sol.k_max, sol.n_phi);
        const double s_bc = pairwise_sync(dm, 1, 2, sol.k_max, sol.n_phi);
        return {s_ab, s_ac, s_bc, info.residual, tail, 0.0};
    }
    const double v = point.coupling(0, 1);
    const double s = pairwise_sync(dm, 0, 1, sol.k_max, sol.n_phi);
    return {s, over_v(s, v), info.residual, tail, 0.0};
}

}  // namespace

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("KERRSYNC_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

ResultTable run_sweep(const SweepConfig& config, int threads) {
    const auto t_start = std::chrono::steady_clock::now();

    struct Point {
        double inner;
        std::optional<double> outer;
    };
    std::vector<Point> grid;
    if (config.axis2)
        for (double outer : config.axis2->values)
            for (double inner : config.axis.values) grid.push_back({inner, outer});
    else
        for (double inner : config.axis.values) grid.push_back({inner, std::nullopt});

    ResultTable table;
    table.columns = columns_for(config.mode);
    table.mode = to_string(config.mode);
    table.seed = config.seed;
    table.config_canonical = config.canonical;
    table.config_digest = config_hash(config);
    table.rows.resize(grid.size());
    std::vector<std::string> errors(grid.size());

    const int n_threads =
        std::max(1, std::min<int>(resolve_threads(threads), static_cast<int>(grid.size())));
    table.threads_used = n_threads;

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            const PointParams point = materialize(config, grid[i].inner, grid[i].outer);
            std::vector<double> row = coordinates_of(config, point);
            try {
                const std::vector<double> cells = evaluate_point(config, point, i);
                row.insert(row.end(), cells.begin(), cells.end());
            } catch (const std::exception& err) {
                row.resize(table.columns.size(), nan_cell);
                row.back() = 1.0;
                errors[i] = err.what();
            }
            table.rows[i] = std::move(row);
        }
    };

    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty())
            table.point_errors.push_back("row " + std::to_string(i) + ": " + errors[i]);

    table.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return table;
}

}  // namespace kerrsync
