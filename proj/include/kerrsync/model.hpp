#pragma once

// Physical model of a network of dissipatively stabilized Kerr self-oscillators:
// anharmonic site Hamiltonians, Lorentzian-weighted amplification/damping jump
// operators, the excitation-exchange coupling, and the mapping from sideband
// engineering parameters to dissipator parameters.

#include <vector>

#include "kerrsync/fock.hpp"

namespace kerrsync {

// One oscillator. All frequencies and rates share one unit (the sweep configs
// use gamma_minus = 1 as that unit); n_plus/n_minus and sigma_plus/sigma_minus
// are dimensionless Fock-scale numbers.
struct OscillatorParams {
    double omega = 0.0;        // natural frequency
    double kerr = 0.0;         // anharmonicity K >= 0, energy E(n) = omega n - K n(n-1)
    double gamma_plus = 0.0;   // amplification strength
    double gamma_minus = 0.0;  // damping strength
    double n_plus = 0.0;       // center of the upward (gain) Lorentzian
    double n_minus = 0.0;      // center of the downward (damping) Lorentzian
    double sigma_plus = 0.0;   // width of the gain Lorentzian, > 0
    double sigma_minus = 0.0;  // width of the damping Lorentzian, > 0
};

// Throws std::invalid_argument when sigma <= 0, gamma < 0, kerr < 0 or n < 0.
void validate(const OscillatorParams& p);

struct NetworkSpec {
    std::vector<OscillatorParams> oscillators;
    Eigen::MatrixXd coupling;  // real symmetric, zero diagonal
    ModeLayout layout;
};

// Checks size consistency, coupling symmetry and zero diagonal.
void validate(const NetworkSpec& net);

// Sideband-engineering knobs of a concrete realization, prior to adiabatic
// elimination of the auxiliary cavity.
struct SidebandParams {
    double g = 0.0;            // linearized coupling
    double kappa = 0.0;        // cavity linewidth, > 0
    double delta_plus = 0.0;   // drive detuning of the gain tone
    double delta_minus = 0.0;  // drive detuning of the damping tone
    double omega0 = 0.0;       // oscillator frequency reference
    double kerr = 0.0;         // K > 0
};

struct DissipatorParams {
    double gamma = 0.0;
    double sigma = 0.0;
    double n_plus = 0.0;
    double n_minus = 0.0;
};

// f(n) = sigma^2 / ((n - center)^2 + sigma^2), in (0, 1], peak value 1 at n = center.
double lorentzian_rate(double n, double center, double sigma);

// Diagonal <n|H|n> = omega n - K n(n-1).
SparseOp site_hamiltonian(const OscillatorParams& p, int d);

// One n-resolved jump channel; enters the Liouvillian as rate * D[op].
struct JumpTerm {
    double rate;    // gamma_pm * f_pm(n)
    SparseOp op;    // sqrt(n)|n><n-1| upward, sqrt(n)|n-1><n| downward
};

// Upward terms gamma_plus f_plus(n) D[sqrt(n)|n><n-1|] and downward terms
// gamma_minus f_minus(n) D[sqrt(n)|n-1><n|] for n = 1..d-1. Each channel is
// an independent dissipator; there are no cross terms between channels.
std::vector<JumpTerm> stabilizer_jump_ops(const OscillatorParams& p, int d);

// V = -sum_{j<k} C_jk (a_j+ a_k + a_k+ a_j) on the full network space.
// The overall sign only matters on odd coupling loops, where it selects
// which sign of the direct link interferes destructively with a mediated
// path; positive C_jk entries are the convention for plotted strengths.
SparseOp coupling_hamiltonian(const NetworkSpec& net);

// gamma = 4 g^2 / kappa, sigma = kappa / (8 K), n_pm = +-(delta_pm - omega0) / (2 K)
DissipatorParams sideband_parameters(const SidebandParams& s);

// Same network with omega_j -> omega_j - omega_1: only detunings matter for
// steady states, and the common rotating frame keeps the generator well scaled.
NetworkSpec shifted_to_reference(NetworkSpec net);

}  // namespace kerrsync
