#include "kerrsync/steadystate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

namespace kerrsync {

namespace {

// Generator with the row of the (0,0) element replaced by the trace functional.
SparseOp with_trace_row(const SparseOp& gen, long dim) {
    std::vector<Triplet> trips;
    trips.reserve(gen.nonZeros() + dim);
    for (int k = 0; k < gen.outerSize(); ++k)
        for (SparseOp::InnerIterator it(gen, k); it; ++it)
            if (it.row() != 0) trips.emplace_back(it.row(), it.col(), it.value());
    for (long n = 0; n < dim; ++n) trips.emplace_back(0, n + dim * n, 1.0);
    SparseOp out(gen.rows(), gen.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

double max_abs_entry(const SparseOp& m) {
    double scale = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseOp::InnerIterator it(m, k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    return scale;
}

DensityMatrix normalized_state(const Eigen::VectorXcd& v, const ModeLayout& layout) {
    const long dim = layout.total_dim();
    DenseOp rho = unvec_density(v, dim);
    rho = DenseOp((rho + rho.adjoint()) / 2.0);
    const cplx tr = rho.trace();
    if (std::abs(tr) < 1e-300)
        throw std::runtime_error("steady state: candidate has vanishing trace");
    rho /= tr;
    return DensityMatrix{layout, std::move(rho)};
}

double relative_residual(const SparseOp& gen, const DensityMatrix& dm, double gen_norm) {
    return (gen * vec_density(dm.rho)).norm() / gen_norm;
}

// Inverse iteration on (gen - shift I); deterministic start, optionally kept
// orthogonal to a fixed vector (for the degeneracy probe).
Eigen::VectorXcd inverse_iterate(const SparseOp& gen, double shift,
                                 Eigen::VectorXcd start, int iterations,
                                 const Eigen::VectorXcd* orthogonal_to) {
    SparseOp shifted = gen;
    const long n = gen.rows();
    SparseOp id(n, n);
    id.setIdentity();
    shifted -= SparseOp(cplx(shift, 0.0) * id);
    Eigen::SparseLU<SparseOp> lu(shifted);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("steady state: shifted factorization failed");
    Eigen::VectorXcd v = std::move(start);
    v.normalize();
    for (int it = 0; it < iterations; ++it) {
        v = lu.solve(v);
        if (orthogonal_to) v -= orthogonal_to->dot(v) * (*orthogonal_to);
        const double norm = v.norm();
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw std::runtime_error("steady state: inverse iteration diverged");
        v /= norm;
    }
    return v;
}

// Vectorized indices whose bra and ket total occupations agree, ascending.
std::vector<long> balanced_sector(const ModeLayout& layout) {
    const long dim = layout.total_dim();
    std::vector<int> occ(dim);
    for (long r = 0; r < dim; ++r) occ[r] = layout.total_occupation(r);
    std::vector<long> idx;
    for (long c = 0; c < dim; ++c)
        for (long r = 0; r < dim; ++r)
            if (occ[r] == occ[c]) idx.push_back(r + dim * c);
    return idx;
}

// Every generator assembled from number-conserving Hamiltonians and
// number-resolved jumps conserves the difference of bra and ket occupation,
// so its steady state lives where that difference vanishes. Solving the
// projected system there is far cheaper than the full factorization; the
// caller re-checks the residual against the full generator, which catches
// any generator that does not actually have this structure.
bool balanced_sector_solve(const SparseOp& gen, const ModeLayout& layout,
                           DensityMatrix& dm) {
    const long dim = layout.total_dim();
    const std::vector<long> idx = balanced_sector(layout);
    const long n_red = static_cast<long>(idx.size());
    std::vector<long> pos(static_cast<std::size_t>(dim) * dim, -1);
    for (long i = 0; i < n_red; ++i) pos[idx[i]] = i;

    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(gen.nonZeros() / 2) + dim);
    for (int k = 0; k < gen.outerSize(); ++k) {
        const long cp = pos[k];
        if (cp < 0) continue;
        for (SparseOp::InnerIterator it(gen, k); it; ++it) {
            const long rp = pos[it.row()];
            // Row 0 is the element rho_00; it carries the trace condition.
            if (rp > 0) trips.emplace_back(rp, cp, it.value());
        }
    }
    for (long n = 0; n < dim; ++n) trips.emplace_back(0, pos[n + dim * n], 1.0);

    SparseOp reduced(n_red, n_red);
    reduced.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<SparseOp> lu(reduced);
    if (lu.info() != Eigen::Success) return false;
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n_red);
    b[0] = 1.0;
    const Eigen::VectorXcd x = lu.solve(b);
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(dim * dim);
    for (long i = 0; i < n_red; ++i) full[idx[i]] = x[i];
    try {
        dm = normalized_state(full, layout);
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

// Deterministic pseudo-random unit vector (splitmix64 bits -> [-1,1] pairs).
Eigen::VectorXcd probe_vector(long n) {
    Eigen::VectorXcd v(n);
    std::uint64_t x = 0x9e3779b97f4a7c15ull;
    auto next = [&x]() {
        x += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return static_cast<double>((z ^ (z >> 31)) >> 11) / 9007199254740992.0;
    };
    for (long i = 0; i < n; ++i) v[i] = cplx(2.0 * next() - 1.0, 2.0 * next() - 1.0);
    v.normalize();
    return v;
}

}  // namespace

DensityMatrix solve_steady_state(const SparseOp& gen, const ModeLayout& layout,
                                 const SolveOptions& options, SolveInfo* info) {
    const long dim = layout.total_dim();
    if (gen.rows() != dim * dim || gen.cols() != dim * dim)
        throw std::invalid_argument("steady state: generator does not match layout");

    const double gen_norm = gen.norm();
    if (gen_norm == 0.0)
        throw std::runtime_error("steady state: zero generator");
    const double scale = max_abs_entry(gen);

    DensityMatrix dm{layout, DenseOp()};
    bool used_fallback = false;
    bool used_reduction = false;

    double residual = std::numeric_limits<double>::infinity();
    if (balanced_sector_solve(gen, layout, dm)) {
        residual = relative_residual(gen, dm, gen_norm);
        used_reduction = residual <= options.residual_tol;
    }

    if (!(residual <= options.residual_tol)) {
        Eigen::SparseLU<SparseOp> lu(with_trace_row(gen, dim));
        if (lu.info() == Eigen::Success) {
            Eigen::VectorXcd b = Eigen::VectorXcd::Zero(dim * dim);
            b[0] = 1.0;
            dm = normalized_state(lu.solve(b), layout);
            residual = relative_residual(gen, dm, gen_norm);
        }
    }

    if (!(residual <= options.residual_tol)) {
        // Direct solve singular or inaccurate: shifted inverse iteration on
        // the unmodified generator, homing in on the null vector.
        used_fallback = true;
        Eigen::VectorXcd v = probe_vector(dim * dim);
        for (long n = 0; n < dim; ++n) v[n + dim * n] += 1.0;  // bias toward unit trace
        v = inverse_iterate(gen, 1e-10 * scale, std::move(v),
                            options.max_iterations, nullptr);
        dm = normalized_state(v, layout);
        residual = relative_residual(gen, dm, gen_norm);
    }

    if (!(residual <= options.residual_tol))
        throw std::runtime_error(
            "steady state: solver did not reach tolerance, relative residual = " +
            std::to_string(residual));

    bool degenerate = false;
    if (options.check_degeneracy) {
        Eigen::VectorXcd null_dir = vec_density(dm.rho).normalized();
        Eigen::VectorXcd w = probe_vector(dim * dim);
        w -= null_dir.dot(w) * null_dir;
        w = inverse_iterate(gen, 1e-10 * scale, std::move(w), 8, &null_dir);
        const double second = (gen * w).norm() / gen_norm;
        degenerate = second <= 100.0 * options.residual_tol;
    }

    if (info) {
        info->residual = residual;
        info->used_fallback = used_fallback;
        info->used_reduction = used_reduction;
        info->degenerate = degenerate;
    }
    return dm;
}

Eigen::VectorXd uncoupled_fock_populations(const OscillatorParams& p, int d) {
    if (d < 2) throw std::invalid_argument("fock populations: dimension must be >= 2");
    validate(p);
    if (p.gamma_minus <= 0.0)
        throw std::invalid_argument("fock populations: gamma_minus must be > 0");
    Eigen::VectorXd pops(d);
    pops[0] = 1.0;
    for (int m = 1; m < d; ++m) {
        const double up = p.gamma_plus * lorentzian_rate(m, p.n_plus, p.sigma_plus);
        const double down = p.gamma_minus * lorentzian_rate(m, p.n_minus, p.sigma_minus);
        pops[m] = pops[m - 1] * up / down;
    }
    pops /= pops.sum();
    return pops;
}

DensityMatrix dense_nullspace_oracle(const SparseOp& gen, const ModeLayout& layout) {
    const long dim = layout.total_dim();
    if (dim > 64)
        throw std::invalid_argument("dense oracle: total dimension must be <= 64");
    if (gen.rows() != dim * dim || gen.cols() != dim * dim)
        throw std::invalid_argument("dense oracle: generator does not match layout");
    const DenseOp dense_gen(gen);
    Eigen::ComplexEigenSolver<DenseOp> eig(dense_gen);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("dense oracle: eigendecomposition failed");
    long best = 0;
    double best_abs = std::abs(eig.eigenvalues()[0]);
    for (long i = 1; i < eig.eigenvalues().size(); ++i) {
        const double a = std::abs(eig.eigenvalues()[i]);
        if (a < best_abs) {
            best_abs = a;
            best = i;
        }
    }
    return normalized_state(eig.eigenvectors().col(best), layout);
}

std::vector<double> truncation_residual(const DensityMatrix& dm) {
    std::vector<double> tails;
    tails.reserve(dm.layout.dims.size());
    for (int s = 0; s < dm.layout.n_sites(); ++s) {
        const DenseOp marginal = partial_trace(dm.rho, dm.layout, {s});
        const int d = dm.layout.dims[s];
        double tail = 0.0;
        for (int n = std::max(0, d - 2); n < d; ++n) tail += marginal(n, n).real();
        tails.push_back(tail);
    }
    return tails;
}

double trace_deviation(const DensityMatrix& dm) {
    return std::abs(dm.rho.trace() - cplx(1.0, 0.0));
}

double min_eigenvalue(const DensityMatrix& dm) {
    const DenseOp herm = (dm.rho + dm.rho.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<DenseOp> eig(herm, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

void assert_valid_state(const DensityMatrix& dm) {
    if (hermiticity_deviation(dm.rho) >= 1e-10)
        throw std::runtime_error("density matrix: Hermiticity deviation above 1e-10");
    if (trace_deviation(dm) >= 1e-10)
        throw std::runtime_error("density matrix: trace deviation above 1e-10");
    if (min_eigenvalue(dm) <= -1e-8)
        throw std::runtime_error("density matrix: negative eigenvalue below -1e-8");
}

}  // namespace kerrsync
