#include "kerrsync/classical.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"

using namespace kerrsync;

namespace {

NetworkSpec classical_pair(double delta, double v, double kerr = 2.0) {
    NetworkSpec net = kerrsync::testing::two_site(delta, v, 4, kerr);
    // Symmetric detuning keeps the co-rotating frame centered.
    net.oscillators[0].omega = delta / 2.0;
    net.oscillators[1].omega = -delta / 2.0;
    return net;
}

NetworkSpec single(const OscillatorParams& p) {
    NetworkSpec net;
    net.oscillators = {p};
    net.coupling = Eigen::MatrixXd::Zero(1, 1);
    net.layout = make_layout({2});
    return net;
}

// Classical RK4 reference integrator on the same drift field.
void rk4_step(ClassicalState& state, const NetworkSpec& net, double dt) {
    const std::size_t n = state.amplitudes.size();
    const auto k1 = drift(state, net);
    ClassicalState tmp = state;
    for (std::size_t j = 0; j < n; ++j)
        tmp.amplitudes[j] = state.amplitudes[j] + 0.5 * dt * k1[j];
    const auto k2 = drift(tmp, net);
    for (std::size_t j = 0; j < n; ++j)
        tmp.amplitudes[j] = state.amplitudes[j] + 0.5 * dt * k2[j];
    const auto k3 = drift(tmp, net);
    for (std::size_t j = 0; j < n; ++j)
        tmp.amplitudes[j] = state.amplitudes[j] + dt * k3[j];
    const auto k4 = drift(tmp, net);
    for (std::size_t j = 0; j < n; ++j)
        state.amplitudes[j] +=
            dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    state.time += dt;
}

}  // namespace

TEST_CASE("limit cycle sits midway between the Lorentzian centers") {
    CHECK(limit_cycle_occupation(kerrsync::testing::stabilized_site()) ==
          doctest::Approx(2.5));
}

TEST_CASE("drift vanishes at the origin and conserves occupation on cycle") {
    const NetworkSpec net = classical_pair(0.0, 0.0);
    ClassicalState origin;
    origin.amplitudes = {cplx(0.0, 0.0), cplx(0.0, 0.0)};
    for (const cplx& d : drift(origin, net)) CHECK(std::abs(d) == 0.0);

    // On the cycle the net gain is zero, so d|alpha|^2/dt = 0.
    const double r = std::sqrt(limit_cycle_occupation(net.oscillators[0]));
    ClassicalState on_cycle;
    on_cycle.amplitudes = {cplx(r, 0.0), cplx(0.0, r)};
    const auto d = drift(on_cycle, net);
    for (int j = 0; j < 2; ++j)
        CHECK(std::abs((std::conj(on_cycle.amplitudes[j]) * d[j]).real()) < 1e-14);

    ClassicalState wrong_size;
    wrong_size.amplitudes = {cplx(1.0, 0.0)};
    CHECK_THROWS_AS(drift(wrong_size, net), std::invalid_argument);
}

TEST_CASE("max_rate_scale picks the fastest of the competing scales") {
    // K n_lc = 2 * 2.5 dominates gamma = 1 and the coupling row sums.
    NetworkSpec net = classical_pair(0.0, 0.1);
    CHECK(max_rate_scale(net) == doctest::Approx(5.0));
    net.coupling(0, 1) = net.coupling(1, 0) = 20.0;
    CHECK(max_rate_scale(net) == doctest::Approx(20.0));
}

TEST_CASE("deterministic flow locks onto the limit-cycle radius") {
    OscillatorParams p = kerrsync::testing::stabilized_site(2.0);
    const double n_lc = limit_cycle_occupation(p);
    // In the frame where the on-cycle rotation vanishes the fixed point is
    // exact for the discrete map as well.
    p.omega = 2.0 * p.kerr * n_lc;
    const NetworkSpec net = single(p);

    ClassicalState state;
    state.amplitudes = {cplx(std::sqrt(1.8 * n_lc), 0.0)};
    for (int step = 0; step < 20000; ++step) rk4_step(state, net, 5e-3);
    CHECK(std::norm(state.amplitudes[0]) == doctest::Approx(n_lc).epsilon(1e-9));
}

TEST_CASE("euler_step converges at first order to the RK4 reference") {
    OscillatorParams p = kerrsync::testing::stabilized_site(2.0);
    p.omega = 2.0 * p.kerr * limit_cycle_occupation(p);
    const NetworkSpec net = single(p);
    const cplx start(std::sqrt(1.3 * limit_cycle_occupation(p)), 0.0);
    const double horizon = 5.0;

    ClassicalState reference;
    reference.amplitudes = {start};
    for (int step = 0; step < 50000; ++step) rk4_step(reference, net, 1e-4);

    auto euler_error = [&](double dt) {
        ClassicalState state;
        state.amplitudes = {start};
        const long n = std::lround(horizon / dt);
        for (long step = 0; step < n; ++step)
            euler_step(state, net, dt, 0.0, nullptr, nullptr);
        return std::abs(state.amplitudes[0] - reference.amplitudes[0]);
    };
    const double coarse = euler_error(2e-3);
    const double fine = euler_error(1e-3);
    CHECK(coarse / fine == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("matched noiseless oscillators keep a constant relative phase") {
    const NetworkSpec net = classical_pair(0.0, 0.0);
    NoiseParams noise;
    noise.seed = 7;
    SimOptions options;
    options.dt = 1e-3;
    options.t_burn = 2.0;
    options.t_sample = 4.0;
    options.dt_sample = 0.25;
    options.n_traj = 1;
    const SampledPhases samples = simulate(net, noise, options);
    REQUIRE(samples.per_trajectory.size() == 1);
    CHECK(samples.n_unstable == 0);
    for (double phi : samples.per_trajectory.front())
        CHECK(std::abs(phi) < 1e-12);
}

TEST_CASE("a detuned pair winds at the detuning rate") {
    const double delta = 3.0;
    const NetworkSpec net = classical_pair(delta, 0.0);
    NoiseParams noise;
    SimOptions options;
    options.dt = 1e-3;
    options.t_burn = 5.0;
    options.t_sample = 10.0;
    options.dt_sample = 0.5;
    options.n_traj = 1;
    const SampledPhases samples = simulate(net, noise, options);
    const auto& phases = samples.per_trajectory.front();
    REQUIRE(phases.size() >= 10);
    for (std::size_t i = 0; i + 1 < phases.size(); ++i) {
        const double err = std::remainder(
            phases[i + 1] - phases[i] + delta * options.dt_sample,
             2.0 * std::numbers::pi);
        CHECK(std::abs(err) < 1e-2);
    }
}

TEST_CASE("simulate guards its numerical envelope") {
    const NetworkSpec net = classical_pair(0.0, 0.05);
    NoiseParams noise;
    SimOptions options;
    options.dt = 0.1;  // dt * rate = 0.5, far past the gate
    CHECK_THROWS_AS(simulate(net, noise, options), std::invalid_argument);

    // Broadband gain with no damping pushes every trajectory out.
    NetworkSpec runaway = classical_pair(0.0, 0.0);
    for (auto& p : runaway.oscillators) {
        p.gamma_plus = 5.0;
        p.sigma_plus = 1e3;
        p.gamma_minus = 1.0;
    }
    options.dt = 5e-4;
    options.t_burn = 5.0;
    options.t_sample = 2.0;
    options.n_traj = 2;
    CHECK_THROWS_AS(simulate(runaway, noise, options), std::runtime_error);
}

TEST_CASE("trajectories are bit-reproducible for a fixed seed") {
    const NetworkSpec net = classical_pair(1.0, 0.02);
    NoiseParams noise;
    noise.gamma_t = 1.0;
    noise.n_t = 0.1;
    noise.seed = 42;
    SimOptions options;
    options.dt = 1e-3;
    options.t_burn = 1.0;
    options.t_sample = 2.0;
    options.dt_sample = 0.1;
    options.n_traj = 2;
    const SampledPhases a = simulate(net, noise, options);
    const SampledPhases b = simulate(net, noise, options);
    REQUIRE(a.per_trajectory.size() == b.per_trajectory.size());
    for (std::size_t t = 0; t < a.per_trajectory.size(); ++t) {
        REQUIRE(a.per_trajectory[t].size() == b.per_trajectory[t].size());
        for (std::size_t i = 0; i < a.per_trajectory[t].size(); ++i)
            CHECK(a.per_trajectory[t][i] == b.per_trajectory[t][i]);
    }

    noise.seed = 43;
    const SampledPhases c = simulate(net, noise, options);
    bool any_difference = false;
    for (std::size_t i = 0; i < c.per_trajectory.front().size(); ++i)
        any_difference |= c.per_trajectory.front()[i] != a.per_trajectory.front()[i];
    CHECK(any_difference);
}

TEST_CASE("phase histogram edge cases have closed-form S") {
    const double two_pi = 2.0 * std::numbers::pi;

    // Four identical trajectories, each an exactly uniform sweep: every bin
    // equal in every batch, so S = 0 with no batch spread. A single ramp
    // trajectory would not do: its time slices each cover one arc.
    SampledPhases uniform;
    uniform.per_trajectory.assign(4, {});
    for (auto& traj : uniform.per_trajectory)
        for (int k = 0; k < 80; ++k)
            traj.push_back((k + 0.5) * two_pi / 80.0);
    const PhaseHistogram flat = classical_phase_histogram(uniform, 16);
    CHECK(flat.n_samples == 320);
    CHECK(flat.s_measure == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(flat.s_stderr == doctest::Approx(0.0).epsilon(1e-12));

    // Everything in one bin: S = n_bins - 1.
    SampledPhases spike;
    spike.per_trajectory.assign(2, std::vector<double>(100, 0.1));
    const PhaseHistogram peaked = classical_phase_histogram(spike, 10);
    CHECK(peaked.s_measure == doctest::Approx(9.0));

    // Disagreeing batches surface as a nonzero standard error.
    SampledPhases mixed;
    mixed.per_trajectory.push_back(std::vector<double>(100, 0.1));
    mixed.per_trajectory.emplace_back();
    for (int k = 0; k < 100; ++k)
        mixed.per_trajectory.back().push_back((k + 0.5) * two_pi / 100.0);
    const PhaseHistogram spread = classical_phase_histogram(mixed, 10);
    CHECK(spread.s_stderr > 0.0);

    CHECK_THROWS_AS(classical_phase_histogram(uniform, 1), std::invalid_argument);
    CHECK_THROWS_AS(classical_phase_histogram(uniform, 64), std::invalid_argument);
}

TEST_CASE("uniform phase samples give S consistent with zero") {
    const double two_pi = 2.0 * std::numbers::pi;
    auto engine = kerrsync::testing::rng(101);
    std::uniform_real_distribution<double> uniform(0.0, two_pi);
    SampledPhases samples;
    for (int batch = 0; batch < 4; ++batch) {
        samples.per_trajectory.emplace_back();
        for (int k = 0; k < 5000; ++k)
            samples.per_trajectory.back().push_back(uniform(engine));
    }
    const PhaseHistogram hist = classical_phase_histogram(samples, 8);
    // The max-bin estimator is biased upward by sampling noise, so allow
    // the batch spread plus a small absolute slack.
    CHECK(hist.s_measure < 3.0 * hist.s_stderr + 0.1);
    CHECK(hist.s_measure >= 0.0);
}
