#pragma once

// Shared fixtures: seeded RNG, random operators and states, and small
// reference networks used across the test suites.

#include <random>

#include "kerrsync/model.hpp"

namespace kerrsync {
namespace testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline DenseOp random_complex(int d, std::mt19937_64& engine) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    DenseOp m(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = cplx(gauss(engine), gauss(engine));
    return m;
}

inline DenseOp random_hermitian(int d, std::mt19937_64& engine) {
    const DenseOp m = random_complex(d, engine);
    return (m + m.adjoint()).eval() / 2.0;
}

inline DenseOp random_density(int d, std::mt19937_64& engine) {
    const DenseOp m = random_complex(d, engine);
    DenseOp rho = m * m.adjoint();
    return rho / rho.trace().real();
}

inline DenseOp dense(const SparseOp& op) { return DenseOp(op); }

// Fock-stabilized site used throughout: gain centered two below the damping
// center, narrow widths, unit rates.
inline OscillatorParams stabilized_site(double kerr = 10.0) {
    OscillatorParams p;
    p.kerr = kerr;
    p.gamma_plus = 1.0;
    p.gamma_minus = 1.0;
    p.n_plus = 2.0;
    p.n_minus = 3.0;
    p.sigma_plus = 0.2;
    p.sigma_minus = 0.2;
    return p;
}

inline NetworkSpec two_site(double delta, double v, int d, double kerr = 10.0) {
    NetworkSpec net;
    net.oscillators = {stabilized_site(kerr), stabilized_site(kerr)};
    net.oscillators[1].omega = -delta;
    net.coupling = Eigen::MatrixXd::Zero(2, 2);
    net.coupling(0, 1) = net.coupling(1, 0) = v;
    net.layout = make_layout({d, d});
    return net;
}

}  // namespace testing
}  // namespace kerrsync
