#pragma once

// Sparse operator algebra on truncated multi-mode Fock spaces, plus the
// vectorization machinery that turns Hamiltonians and jump operators into
// superoperators acting on column-stacked density matrices.
//
// Conventions (shared by every builder in this library):
//   * vec(rho) stacks columns: element (r, c) lands at index r + dim*c,
//     so vec(A rho B) = kron(B^T, A) vec(rho).
//   * Site 0 is the slowest-varying factor of the tensor-product basis:
//     |n_0, n_1, ..., n_{s-1}> has flat index (...((n_0 d_1 + n_1) d_2 + n_2)...).

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace kerrsync {

using cplx = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<cplx>;
using DenseOp = Eigen::MatrixXcd;
using Triplet = Eigen::Triplet<cplx>;

// Entries at or below this magnitude are dropped when operators and
// superoperators are assembled. Far below every physical rate scale.
inline constexpr double drop_tolerance = 1e-14;

// Per-site truncation dimensions; site 0 varies slowest in the flat index.
struct ModeLayout {
    std::vector<int> dims;

    int n_sites() const { return static_cast<int>(dims.size()); }
    long total_dim() const;

    // flat index of |n_0, ..., n_{s-1}>
    long flatten(const std::vector<int>& occ) const;
    std::vector<int> unflatten(long index) const;

    // total occupation sum_j n_j of a flat basis index
    int total_occupation(long index) const;
};

// Validates every dim >= 2.
ModeLayout make_layout(std::vector<int> dims);

// a|n> = sqrt(n)|n-1>  ->  entry (n-1, n) = sqrt(n)
SparseOp annihilation_matrix(int d);
SparseOp creation_matrix(int d);    // adjoint of the above
SparseOp number_matrix(int d);      // diag(0, 1, ..., d-1)
SparseOp identity_matrix(long d);

// |ket><bra| on a d-dimensional space
SparseOp ketbra(int d, int ket, int bra);

// Largest |entries(i,j) - conj(entries(j,i))| over stored entries.
double hermiticity_deviation(const SparseOp& op);
double hermiticity_deviation(const DenseOp& op);

// Drops entries with magnitude <= tol in place.
void prune_small(SparseOp& op, double tol = drop_tolerance);

// kron(A, B): A indexes the slower-varying factor.
SparseOp kron_sparse(const SparseOp& a, const SparseOp& b);

// I (x) ... (x) op (x) ... (x) I with op at the given site.
SparseOp embed_site(const SparseOp& op, int site, const ModeLayout& layout);

// Column stacking and its inverse.
Eigen::VectorXcd vec_density(const DenseOp& rho);
DenseOp unvec_density(const Eigen::VectorXcd& v, long dim);

// rho -> -i(H rho - rho H), i.e. -i(kron(I, H) - kron(H^T, I)).
// Rejects H with Hermiticity deviation above tol * max|entry|.
SparseOp hamiltonian_superop(const SparseOp& h, double tol = 1e-12);

// rho -> L rho L+ - 1/2 {L+L, rho}
//      = kron(conj(L), L) - 1/2 kron(I, L+L) - 1/2 kron((L+L)^T, I)
SparseOp dissipator_superop(const SparseOp& l);

// Reduced state on the kept sites, in the order they appear in `keep`
// (first kept site varies slowest). Trace is preserved.
DenseOp partial_trace(const DenseOp& rho, const ModeLayout& layout,
                      const std::vector<int>& keep);

// Layout of the reduced space produced by partial_trace.
ModeLayout reduced_layout(const ModeLayout& layout, const std::vector<int>& keep);

}  // namespace kerrsync
