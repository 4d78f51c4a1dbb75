#pragma once

// First-order perturbation theory in the coupling for two oscillators.
//
// The uncoupled steady state rho^(0) is the product of the single-site
// detailed-balance populations. To first order in the coupling c the only
// new elements sit on the minor diagonals |m1-1, m2+1><m1, m2|; each is the
// population imbalance divided by its complex rate lambda_minus, whose
// imaginary part vanishes exactly where single-quantum exchange between the
// two anharmonic ladders is resonant.

#include <vector>

#include "kerrsync/steadystate.hpp"

namespace kerrsync {

struct CoherenceElement {
    int m1 = 0;           // >= 1
    int m2 = 0;
    cplx value;           // rho^(1) between |m1-1, m2+1> and |m1, m2>
    cplx lambda;          // the rate lambda_minus(m1, m2)
};

// lambda_minus =
//   -i [ -omega_1 + omega_2 + 2 K1 m1 - 2 K2 m2 - 2 K1 ]
//   - (gamma_1+/2) ( m1 f1+(m1) + (m1+1) f1+(m1+1) )
//   - (gamma_1-/2) ( (m1-1) f1-(m1-1) + m1 f1-(m1) )
//   - (gamma_2+/2) ( (m2+2) f2+(m2+2) + (m2+1) f2+(m2+1) )
//   - (gamma_2-/2) ( (m2+1) f2-(m2+1) + m2 f2-(m2) )
// Requires m1 >= 1. Strictly negative real part whenever some gamma > 0.
cplx lambda_minus(int m1, int m2, const OscillatorParams& p1,
                  const OscillatorParams& p2);

// value = -i c sqrt(m1 (m2+1)) (rho0[m1,m2] - rho0[m1-1,m2+1]) / lambda_minus
// for every m1 in 1..d1-1, m2 in 0..d2-2.
std::vector<CoherenceElement> first_order_coherences(const OscillatorParams& p1,
                                                     const OscillatorParams& p2,
                                                     double c, int d1, int d2);

// S = 2 |sum of all first-order coherences|; exactly linear in c.
double perturbative_sync(const OscillatorParams& p1, const OscillatorParams& p2,
                         double c, int d1, int d2);

}  // namespace kerrsync
