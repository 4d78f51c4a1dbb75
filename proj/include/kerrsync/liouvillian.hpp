#pragma once

// Assembly of the full network generator: coherent part from the site
// Hamiltonians plus the coupling, dissipative part from every site's
// n-resolved jump channels, as one sparse superoperator on the
// column-stacked density matrix.

#include "kerrsync/model.hpp"

namespace kerrsync {

// rho_dot = -i[sum_j H_j + V, rho] + sum_j sum_n rate_jn D[op_jn] rho.
//
// The network is first shifted to the rotating frame of oscillator 1
// (steady states depend only on detunings). Assembly order is fixed, so
// repeated builds of the same network are bit-identical.
//
// Throws a capacity error naming dim^2 when the estimated assembly
// footprint exceeds the budget.
SparseOp build_network_liouvillian(const NetworkSpec& net,
                                   double memory_budget_gb = 8.0);

// Rough upper bound for the assembled generator plus factorization headroom,
// used for the fail-fast capacity check.
double estimate_liouvillian_bytes(const NetworkSpec& net);

}  // namespace kerrsync
