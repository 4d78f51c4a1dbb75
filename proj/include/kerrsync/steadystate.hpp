#pragma once

// Steady-state solution of L rho = 0 with unit trace: sparse direct solve
// with the trace condition replacing one row, a shifted-inverse-iteration
// fallback, the analytical uncoupled solution, and a dense oracle for tests.

#include <vector>

#include "kerrsync/model.hpp"

namespace kerrsync {

struct DensityMatrix {
    ModeLayout layout;
    DenseOp rho;

    cplx trace() const { return rho.trace(); }
};

struct SolveOptions {
    double residual_tol = 1e-10;  // accepted ||L rho||_2 / ||L||_F
    int max_iterations = 40;      // inverse-iteration cap in the fallback
    bool check_degeneracy = false;
};

struct SolveInfo {
    double residual = 0.0;   // ||L rho||_2 / ||L||_F of the returned state
    bool used_fallback = false;
    // Solved within the balanced occupation sector (bra and ket occupation
    // equal); valid whenever the generator conserves their difference, and
    // verified against the full generator through the residual.
    bool used_reduction = false;
    bool degenerate = false; // second orthogonal null candidate found
};

// Replaces the row of the (0,0) matrix element with the trace functional and
// solves the sparse system; falls back to shifted inverse iteration when the
// direct factorization is singular to working precision. Throws a solver
// error with the residual when the tolerance cannot be met.
DensityMatrix solve_steady_state(const SparseOp& gen, const ModeLayout& layout,
                                 const SolveOptions& options = {},
                                 SolveInfo* info = nullptr);

// Diagonal steady state of one uncoupled site from the detailed-balance
// recursion p_m / p_{m-1} = (gamma_plus/gamma_minus) f_plus(m) / f_minus(m),
// normalized over 0..d-1.
Eigen::VectorXd uncoupled_fock_populations(const OscillatorParams& p, int d);

// Full dense spectrum; returns the eigenvector of the eigenvalue nearest
// zero, Hermitized and trace-normalized. Only for total dim <= 64.
DensityMatrix dense_nullspace_oracle(const SparseOp& gen, const ModeLayout& layout);

// Population in the top two Fock levels of each site's marginal; gates
// whether the truncation was wide enough.
std::vector<double> truncation_residual(const DensityMatrix& dm);

// Validation helpers for the DensityMatrix invariants.
double trace_deviation(const DensityMatrix& dm);      // |tr rho - 1|
double min_eigenvalue(const DensityMatrix& dm);       // smallest eigenvalue of (rho+rho+)/2

// Throws when Hermiticity (1e-10), trace (1e-10) or positivity (-1e-8) fail.
void assert_valid_state(const DensityMatrix& dm);

}  // namespace kerrsync
