#include "kerrsync/classical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kerrsync {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double wrap_phase(double phi) {
    phi = std::fmod(phi, two_pi);
    return phi < 0.0 ? phi + two_pi : phi;
}

}  // namespace

long SampledPhases::total_samples() const {
    long total = 0;
    for (const auto& traj : per_trajectory) total += static_cast<long>(traj.size());
    return total;
}

std::vector<cplx> drift(const ClassicalState& state, const NetworkSpec& net) {
    const std::size_t n = net.oscillators.size();
    if (state.amplitudes.size() != n)
        throw std::invalid_argument("drift: state size does not match network");
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const OscillatorParams& p = net.oscillators[j];
        const cplx a = state.amplitudes[j];
        const double occ = std::norm(a);
        const double omega_eff = p.omega - 2.0 * p.kerr * occ;
        const double damping =
            p.gamma_minus * lorentzian_rate(occ, p.n_minus, p.sigma_minus) -
            p.gamma_plus * lorentzian_rate(occ, p.n_plus, p.sigma_plus);
        cplx d = -(cplx(0.0, omega_eff) + 0.5 * damping) * a;
        for (std::size_t k = 0; k < n; ++k)
            if (k != j && net.coupling(j, k) != 0.0)
                d += cplx(0.0, net.coupling(j, k)) * state.amplitudes[k];
        out[j] = d;
    }
    return out;
}

void euler_step(ClassicalState& state, const NetworkSpec& net, double dt,
                double noise_std, std::mt19937_64* engine,
                std::normal_distribution<double>* gauss) {
    const std::vector<cplx> d = drift(state, net);
    for (std::size_t j = 0; j < state.amplitudes.size(); ++j) {
        state.amplitudes[j] += dt * d[j];
        if (engine)
            state.amplitudes[j] +=
                cplx(noise_std * (*gauss)(*engine), noise_std * (*gauss)(*engine));
    }
    state.time += dt;
}

double limit_cycle_occupation(const OscillatorParams& p) {
    return 0.5 * (p.n_plus + p.n_minus);
}

double on_cycle_frequency(const OscillatorParams& p) {
    return p.omega - 2.0 * p.kerr * limit_cycle_occupation(p);
}

double corotating_frequency(const NetworkSpec& net) {
    double mean = 0.0;
    for (const auto& p : net.oscillators) mean += on_cycle_frequency(p);
    return mean / double(net.oscillators.size());
}

double max_rate_scale(const NetworkSpec& net) {
    const double frame = corotating_frequency(net);
    double rate = 0.0;
    for (std::size_t j = 0; j < net.oscillators.size(); ++j) {
        const OscillatorParams& p = net.oscillators[j];
        rate = std::max({rate, p.gamma_plus, p.gamma_minus,
                         std::abs(on_cycle_frequency(p) - frame),
                         p.kerr * limit_cycle_occupation(p)});
        double row = 0.0;
        for (std::size_t k = 0; k < net.oscillators.size(); ++k)
            row += std::abs(net.coupling(j, k));
        rate = std::max(rate, row);
    }
    return rate;
}

SampledPhases simulate(const NetworkSpec& net, const NoiseParams& noise,
                       const SimOptions& options) {
    if (net.oscillators.size() != 2)
        throw std::invalid_argument("simulate: relative-phase sampling needs two oscillators");
    validate(net);
    if (noise.gamma_t < 0.0 || noise.n_t < 0.0)
        throw std::invalid_argument("simulate: noise parameters must be >= 0");
    if (options.dt <= 0.0 || options.t_sample <= 0.0 || options.n_traj < 1)
        throw std::invalid_argument("simulate: nonpositive step, window or trajectory count");
    if (options.dt * max_rate_scale(net) > 0.01)
        throw std::invalid_argument(
            "simulate: dt too large for the fastest rate scale (need dt*rate <= 0.01)");

    // Integrate in the frame rotating at the mean on-cycle frequency. The
    // recorded relative phase is frame-invariant, and removing the common
    // rotation keeps the Euler phase error set by the detuning, not by the
    // absolute frequencies.
    NetworkSpec frame_net = net;
    const double frame = corotating_frequency(net);
    for (auto& p : frame_net.oscillators) p.omega -= frame;

    const double noise_std = std::sqrt(noise.gamma_t * noise.n_t * options.dt / 2.0);
    const long n_burn = std::lround(std::ceil(options.t_burn / options.dt));
    const long n_steps = std::lround(std::ceil(options.t_sample / options.dt));
    const long stride = std::max(1l, std::lround(options.dt_sample / options.dt));

    // Escape threshold: ten times the limit-cycle radius, in occupation terms.
    std::vector<double> occ_limit(2);
    for (int j = 0; j < 2; ++j)
        occ_limit[j] = 100.0 * limit_cycle_occupation(net.oscillators[j]);

    SampledPhases result;
    result.per_trajectory.reserve(options.n_traj);
    for (int traj = 0; traj < options.n_traj; ++traj) {
        std::mt19937_64 engine(splitmix64(noise.seed + static_cast<std::uint64_t>(traj)));
        std::normal_distribution<double> gauss(0.0, 1.0);

        ClassicalState state;
        state.amplitudes = {
            cplx(std::sqrt(std::max(0.5, limit_cycle_occupation(net.oscillators[0]))), 0.0),
            cplx(std::sqrt(std::max(0.5, limit_cycle_occupation(net.oscillators[1]))), 0.0)};

        std::vector<double> phases;
        phases.reserve(static_cast<std::size_t>(n_steps / stride) + 1);
        bool unstable = false;
        for (long step = 0; step < n_burn + n_steps && !unstable; ++step) {
            euler_step(state, frame_net, options.dt, noise_std,
                       noise_std > 0.0 ? &engine : nullptr, &gauss);
            for (int j = 0; j < 2; ++j) {
                const double occ = std::norm(state.amplitudes[j]);
                if (!std::isfinite(occ) || occ > occ_limit[j]) unstable = true;
            }
            if (!unstable && step >= n_burn && (step - n_burn) % stride == 0)
                phases.push_back(wrap_phase(std::arg(state.amplitudes[0]) -
                                            std::arg(state.amplitudes[1])));
        }
        // Thermal noise does occasionally carry a trajectory past the
        // Lorentzian confinement region; its samples up to that point are
        // still valid steady-band statistics, so keep them and flag it.
        if (unstable) ++result.n_unstable;
        if (!phases.empty()) result.per_trajectory.push_back(std::move(phases));
    }
    if (result.per_trajectory.empty())
        throw std::runtime_error(
            "simulate: no samples collected; every trajectory left the limit-cycle "
            "region before the burn-in ended");
    return result;
}

PhaseHistogram classical_phase_histogram(const SampledPhases& samples, int n_bins) {
    if (n_bins < 2) throw std::invalid_argument("phase histogram: need at least 2 bins");
    const long total = samples.total_samples();
    if (total < 10l * n_bins)
        throw std::invalid_argument("phase histogram: need at least 10 samples per bin");

    // Batches for the error estimate: trajectories, or 16 time slices when
    // only a single trajectory was supplied.
    std::vector<std::vector<double>> batches;
    if (samples.per_trajectory.size() >= 2) {
        batches = samples.per_trajectory;
    } else {
        const std::vector<double>& traj = samples.per_trajectory.front();
        const std::size_t n_slices = 16;
        const std::size_t per = (traj.size() + n_slices - 1) / n_slices;
        for (std::size_t start = 0; start < traj.size(); start += per)
            batches.emplace_back(traj.begin() + start,
                                 traj.begin() + std::min(traj.size(), start + per));
    }

    const double width = two_pi / n_bins;
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(n_bins);
    std::vector<Eigen::VectorXd> batch_counts;
    batch_counts.reserve(batches.size());
    for (const auto& batch : batches) {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(n_bins);
        for (double phi : batch) {
            int bin = static_cast<int>(phi / width);
            if (bin >= n_bins) bin = n_bins - 1;  // phi == 2pi after rounding
            c[bin] += 1.0;
        }
        counts += c;
        batch_counts.push_back(std::move(c));
    }

    PhaseHistogram hist;
    hist.n_samples = total;
    hist.density = counts / (double(total) * width);
    int argmax = 0;
    hist.density.maxCoeff(&argmax);
    hist.s_measure = two_pi * hist.density[argmax] - 1.0;

    // Spread of the argmax-bin density across batches; avoids the upward
    // bias a per-batch maximum would introduce. Batches cut short by an
    // escape can be tiny; those only add sampling noise to the spread, so
    // the estimate prefers batches of a reasonable size.
    const std::size_t n_batches = batch_counts.size();
    if (n_batches >= 2) {
        double size_floor = 50.0;
        std::size_t large = 0;
        for (const auto& c : batch_counts)
            if (c.sum() >= size_floor) ++large;
        if (large < 2) size_floor = 1.0;
        std::vector<double> values;
        values.reserve(n_batches);
        for (const auto& c : batch_counts) {
            const double n_batch = c.sum();
            if (n_batch >= size_floor) values.push_back(c[argmax] / (n_batch * width));
        }
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= values.size();
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        var /= (values.size() - 1.0) * values.size();
        hist.s_stderr = two_pi * std::sqrt(var);
    }
    return hist;
}

}  // namespace kerrsync
