#pragma once

// Relative-phase distribution of a two-mode state and the synchronization
// measure S = 2 pi max_phi P(phi) - 1.
//
// P is built from the Fourier coefficients of the relative phase,
//   c_k = sum_{n1,n2} <n1, n2| rho |n1-k, n2+k>,
// the only terms that survive integrating the joint phase-state density
// p(phi1, phi2) against delta(phi1 - phi2 - phi). Phase states are
// normalized so that the uniform (coherence-free) state gives P = 1/(2 pi)
// and S = 0.

#include <vector>

#include "kerrsync/steadystate.hpp"

namespace kerrsync {

// c_k for k in [-k_max, k_max], stored flat at index k + k_max.
struct FourierCoefficients {
    int k_max = 0;
    std::vector<cplx> c;

    cplx at(int k) const { return c[static_cast<std::size_t>(k + k_max)]; }
    cplx& at(int k) { return c[static_cast<std::size_t>(k + k_max)]; }
};

struct PhaseDistribution {
    FourierCoefficients fourier;
    Eigen::VectorXd grid;     // P(phi_i) on phi_i = 2 pi i / N, i = 0..N-1
    double s_measure = 0.0;
};

// k_max < 0 selects the default min(d1, d2) - 1; larger values only append
// zero coefficients. Requires a two-mode state.
FourierCoefficients relative_phase_fourier(const DensityMatrix& rho2, int k_max = -1);

// P(phi) = (1/2pi)(1 + sum_{k != 0} c_k e^{-i k phi}) on a uniform grid,
// real part taken after pairing +-k. Rejects coefficient sets without
// conjugate symmetry; enforces positivity and unit normalization.
PhaseDistribution phase_distribution(const FourierCoefficients& fourier,
                                     int n_grid = 1024);

// S = 2 pi max(grid) - 1; zero for the uniform distribution.
double sync_measure(const PhaseDistribution& dist);

// Reduce to the pair (first, second), then fourier -> distribution -> S.
double pairwise_sync(const DensityMatrix& dm, int first, int second,
                     int k_max = -1, int n_grid = 1024);

}  // namespace kerrsync
