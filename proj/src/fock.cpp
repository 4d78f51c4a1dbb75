#include "kerrsync/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kerrsync {

long ModeLayout::total_dim() const {
    long total = 1;
    for (int d : dims) total *= d;
    return total;
}

long ModeLayout::flatten(const std::vector<int>& occ) const {
    if (occ.size() != dims.size())
        throw std::invalid_argument("flatten: occupation list has wrong length");
    long index = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
        if (occ[s] < 0 || occ[s] >= dims[s])
            throw std::out_of_range("flatten: occupation outside truncation");
        index = index * dims[s] + occ[s];
    }
    return index;
}

std::vector<int> ModeLayout::unflatten(long index) const {
    std::vector<int> occ(dims.size());
    for (std::size_t s = dims.size(); s-- > 0;) {
        occ[s] = static_cast<int>(index % dims[s]);
        index /= dims[s];
    }
    return occ;
}

int ModeLayout::total_occupation(long index) const {
    int total = 0;
    for (std::size_t s = dims.size(); s-- > 0;) {
        total += static_cast<int>(index % dims[s]);
        index /= dims[s];
    }
    return total;
}

ModeLayout make_layout(std::vector<int> dims) {
    if (dims.empty()) throw std::invalid_argument("layout needs at least one site");
    for (int d : dims)
        if (d < 2)
            throw std::invalid_argument("site dimension must be >= 2, got " +
                                        std::to_string(d));
    return ModeLayout{std::move(dims)};
}

SparseOp annihilation_matrix(int d) {
    if (d < 2) throw std::invalid_argument("annihilation_matrix: dimension must be >= 2");
    SparseOp a(d, d);
    a.reserve(Eigen::VectorXi::Constant(d, 1));
    for (int n = 1; n < d; ++n) a.insert(n - 1, n) = std::sqrt(double(n));
    a.makeCompressed();
    return a;
}

SparseOp creation_matrix(int d) {
    return SparseOp(annihilation_matrix(d).adjoint());
}

SparseOp number_matrix(int d) {
    if (d < 2) throw std::invalid_argument("number_matrix: dimension must be >= 2");
    SparseOp n(d, d);
    n.reserve(Eigen::VectorXi::Constant(d, 1));
    for (int k = 1; k < d; ++k) n.insert(k, k) = double(k);
    n.makeCompressed();
    return n;
}

SparseOp identity_matrix(long d) {
    SparseOp id(d, d);
    id.setIdentity();
    return id;
}

SparseOp ketbra(int d, int ket, int bra) {
    if (ket < 0 || ket >= d || bra < 0 || bra >= d)
        throw std::out_of_range("ketbra: index outside dimension");
    SparseOp op(d, d);
    op.insert(ket, bra) = 1.0;
    op.makeCompressed();
    return op;
}

double hermiticity_deviation(const SparseOp& op) {
    SparseOp diff = SparseOp(op - SparseOp(op.adjoint()));
    double dev = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseOp::InnerIterator it(diff, k); it; ++it)
            dev = std::max(dev, std::abs(it.value()));
    return dev;
}

double hermiticity_deviation(const DenseOp& op) {
    return (op - op.adjoint()).cwiseAbs().maxCoeff();
}

void prune_small(SparseOp& op, double tol) {
    op.prune([tol](Eigen::Index, Eigen::Index, const cplx& v) {
        return std::abs(v) > tol;
    });
}

SparseOp kron_sparse(const SparseOp& a, const SparseOp& b) {
    SparseOp out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Triplet> trips;
    trips.reserve(static_cast<std::size_t>(a.nonZeros()) * b.nonZeros());
    for (int ka = 0; ka < a.outerSize(); ++ka)
        for (SparseOp::InnerIterator ia(a, ka); ia; ++ia)
            for (int kb = 0; kb < b.outerSize(); ++kb)
                for (SparseOp::InnerIterator ib(b, kb); ib; ++ib)
                    trips.emplace_back(ia.row() * b.rows() + ib.row(),
                                       ia.col() * b.cols() + ib.col(),
                                       ia.value() * ib.value());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

SparseOp embed_site(const SparseOp& op, int site, const ModeLayout& layout) {
    if (site < 0 || site >= layout.n_sites())
        throw std::out_of_range("embed_site: site index out of range");
    if (op.rows() != layout.dims[site] || op.cols() != layout.dims[site])
        throw std::invalid_argument("embed_site: operator dimension does not match site");
    long left = 1, right = 1;
    for (int s = 0; s < site; ++s) left *= layout.dims[s];
    for (int s = site + 1; s < layout.n_sites(); ++s) right *= layout.dims[s];
    SparseOp out = kron_sparse(identity_matrix(left), op);
    if (right > 1) out = kron_sparse(out, identity_matrix(right));
    return out;
}

Eigen::VectorXcd vec_density(const DenseOp& rho) {
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

DenseOp unvec_density(const Eigen::VectorXcd& v, long dim) {
    if (v.size() != dim * dim)
        throw std::invalid_argument("unvec_density: length is not dim^2");
    return Eigen::Map<const DenseOp>(v.data(), dim, dim);
}

SparseOp hamiltonian_superop(const SparseOp& h, double tol) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("hamiltonian_superop: operator not square");
    double scale = 1.0;
    for (int k = 0; k < h.outerSize(); ++k)
        for (SparseOp::InnerIterator it(h, k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    if (hermiticity_deviation(h) > tol * scale)
        throw std::invalid_argument("hamiltonian_superop: input not Hermitian");
    const long d = h.rows();
    const SparseOp id = identity_matrix(d);
    const cplx mi(0.0, -1.0);
    SparseOp out = SparseOp(mi * (kron_sparse(id, h) -
                                  kron_sparse(SparseOp(h.transpose()), id)));
    prune_small(out);
    return out;
}

SparseOp dissipator_superop(const SparseOp& l) {
    if (l.rows() != l.cols())
        throw std::invalid_argument("dissipator_superop: operator not square");
    const long d = l.rows();
    const SparseOp id = identity_matrix(d);
    const SparseOp ldl = SparseOp(SparseOp(l.adjoint()) * l);
    SparseOp out = SparseOp(kron_sparse(SparseOp(l.conjugate()), l) -
                            0.5 * kron_sparse(id, ldl) -
                            0.5 * kron_sparse(SparseOp(ldl.transpose()), id));
    prune_small(out);
    return out;
}

ModeLayout reduced_layout(const ModeLayout& layout, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    std::vector<int> dims;
    std::vector<bool> seen(layout.dims.size(), false);
    for (int s : keep) {
        if (s < 0 || s >= layout.n_sites())
            throw std::out_of_range("partial_trace: site index out of range");
        if (seen[s]) throw std::invalid_argument("partial_trace: repeated site index");
        seen[s] = true;
        dims.push_back(layout.dims[s]);
    }
    return ModeLayout{std::move(dims)};
}

DenseOp partial_trace(const DenseOp& rho, const ModeLayout& layout,
                      const std::vector<int>& keep) {
    const ModeLayout red = reduced_layout(layout, keep);
    if (rho.rows() != layout.total_dim() || rho.cols() != layout.total_dim())
        throw std::invalid_argument("partial_trace: state does not match layout");

    std::vector<int> traced;
    {
        std::vector<bool> kept(layout.dims.size(), false);
        for (int s : keep) kept[s] = true;
        for (int s = 0; s < layout.n_sites(); ++s)
            if (!kept[s]) traced.push_back(s);
    }

    const long dk = red.total_dim();
    long dt = 1;
    for (int s : traced) dt *= layout.dims[s];

    DenseOp out = DenseOp::Zero(dk, dk);
    std::vector<int> occ_row(layout.dims.size()), occ_col(layout.dims.size());
    std::vector<int> kr(keep.size()), kc(keep.size()), tr(traced.size());
    for (long r = 0; r < dk; ++r) {
        {
            long x = r;
            for (std::size_t i = keep.size(); i-- > 0;) {
                kr[i] = static_cast<int>(x % red.dims[i]);
                x /= red.dims[i];
            }
        }
        for (long c = 0; c < dk; ++c) {
            long x = c;
            for (std::size_t i = keep.size(); i-- > 0;) {
                kc[i] = static_cast<int>(x % red.dims[i]);
                x /= red.dims[i];
            }
            cplx sum = 0.0;
            for (long t = 0; t < dt; ++t) {
                long y = t;
                for (std::size_t i = traced.size(); i-- > 0;) {
                    tr[i] = static_cast<int>(y % layout.dims[traced[i]]);
                    y /= layout.dims[traced[i]];
                }
                for (std::size_t i = 0; i < keep.size(); ++i) {
                    occ_row[keep[i]] = kr[i];
                    occ_col[keep[i]] = kc[i];
                }
                for (std::size_t i = 0; i < traced.size(); ++i) {
                    occ_row[traced[i]] = tr[i];
                    occ_col[traced[i]] = tr[i];
                }
                sum += rho(layout.flatten(occ_row), layout.flatten(occ_col));
            }
            out(r, c) = sum;
        }
    }
    return out;
}

}  // namespace kerrsync
