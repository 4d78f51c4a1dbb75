#pragma once

// Classical Langevin baseline: Euler-Maruyama trajectories of coupled
// amplitude equations with amplitude-dependent frequency and damping,
//   d alpha_j/dt = -(i Omega_j + Gamma_j/2) alpha_j - i sum_k C_jk alpha_k + eta_j,
//   Omega_j = omega_j - 2 K_j |alpha_j|^2,
//   Gamma_j = gamma_- f_-(|alpha_j|^2) - gamma_+ f_+(|alpha_j|^2),
// driven by thermal white noise eta with total complex variance
// gamma_T n_T dt per step (gamma_T n_T dt / 2 per real quadrature).

#include <cstdint>
#include <random>
#include <vector>

#include "kerrsync/model.hpp"

namespace kerrsync {

struct ClassicalState {
    std::vector<cplx> amplitudes;
    double time = 0.0;
};

struct NoiseParams {
    double gamma_t = 0.0;   // bath coupling rate, >= 0
    double n_t = 0.0;       // thermal occupation, >= 0
    std::uint64_t seed = 0;
};

struct SimOptions {
    double dt = 1e-3;        // integrator step
    double t_burn = 200.0;   // discarded transient
    double t_sample = 2000.0;
    double dt_sample = 0.1;  // interval between recorded phases
    int n_traj = 32;
};

// Relative phases arg(alpha_1) - arg(alpha_2) mod 2pi, kept per trajectory
// so that statistical errors can use trajectories as batches. Trajectories
// that left the limit-cycle region are counted; samples they collected
// before leaving are kept.
struct SampledPhases {
    std::vector<std::vector<double>> per_trajectory;
    int n_unstable = 0;

    long total_samples() const;
};

struct PhaseHistogram {
    Eigen::VectorXd density;  // normalized on [0, 2pi), one value per bin
    double s_measure = 0.0;   // 2 pi max(density) - 1
    double s_stderr = 0.0;    // batch-means standard error of s_measure
    long n_samples = 0;
};

// Deterministic part of the equations of motion.
std::vector<cplx> drift(const ClassicalState& state, const NetworkSpec& net);

// One Euler-Maruyama step in place. noise_std is the standard deviation per
// real quadrature; engine may be null for the deterministic flow.
void euler_step(ClassicalState& state, const NetworkSpec& net, double dt,
                double noise_std, std::mt19937_64* engine,
                std::normal_distribution<double>* gauss);

// Occupation scale of the limit cycle, (n_+ + n_-)/2; exact root of Gamma
// for matched gains and widths, reference scale otherwise.
double limit_cycle_occupation(const OscillatorParams& p);

// Largest rate the integrator must resolve, evaluated in the co-rotating
// frame (damping rates, on-cycle frequency spread, Kerr scale, coupling);
// the step-size gate requires dt * rate <= 0.01.
double max_rate_scale(const NetworkSpec& net);

// Integrate n_traj independently seeded trajectories (seed_j derived from
// noise.seed and the trajectory index; the stream layout is part of the
// reproducibility contract). Integration happens in the frame rotating at
// the mean on-cycle frequency; the recorded relative phase is frame
// invariant. Records phases every dt_sample after t_burn. Throws when the
// step-size gate fails or every trajectory went unstable.
SampledPhases simulate(const NetworkSpec& net, const NoiseParams& noise,
                       const SimOptions& options = {});

// Histogram of the pooled samples; the standard error comes from the spread
// of the argmax-bin density across batches (trajectories, or time slices of
// a single trajectory). Requires at least 10 samples per bin.
PhaseHistogram classical_phase_histogram(const SampledPhases& samples, int n_bins);

}  // namespace kerrsync
