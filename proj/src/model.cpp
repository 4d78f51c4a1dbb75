#include "kerrsync/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kerrsync {

void validate(const OscillatorParams& p) {
    if (p.sigma_plus <= 0.0 || p.sigma_minus <= 0.0)
        throw std::invalid_argument("oscillator: sigma must be > 0");
    if (p.gamma_plus < 0.0 || p.gamma_minus < 0.0)
        throw std::invalid_argument("oscillator: gamma must be >= 0");
    if (p.kerr < 0.0)
        throw std::invalid_argument("oscillator: kerr must be >= 0");
    if (p.n_plus < 0.0 || p.n_minus < 0.0)
        throw std::invalid_argument("oscillator: Lorentzian centers must be >= 0");
}

void validate(const NetworkSpec& net) {
    const int n = static_cast<int>(net.oscillators.size());
    if (n == 0) throw std::invalid_argument("network: no oscillators");
    for (const auto& p : net.oscillators) validate(p);
    if (net.layout.n_sites() != n)
        throw std::invalid_argument("network: layout size does not match oscillator count");
    for (int d : net.layout.dims)
        if (d < 2) throw std::invalid_argument("network: site dimension must be >= 2");
    if (net.coupling.rows() != n || net.coupling.cols() != n)
        throw std::invalid_argument("network: coupling matrix size does not match");
    for (int j = 0; j < n; ++j) {
        if (net.coupling(j, j) != 0.0)
            throw std::invalid_argument("network: coupling diagonal must be zero");
        for (int k = j + 1; k < n; ++k)
            if (net.coupling(j, k) != net.coupling(k, j))
                throw std::invalid_argument("network: coupling matrix must be symmetric");
    }
}

double lorentzian_rate(double n, double center, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("lorentzian_rate: sigma must be > 0");
    const double d = n - center;
    return sigma * sigma / (d * d + sigma * sigma);
}

SparseOp site_hamiltonian(const OscillatorParams& p, int d) {
    if (d < 2) throw std::invalid_argument("site_hamiltonian: dimension must be >= 2");
    SparseOp h(d, d);
    h.reserve(Eigen::VectorXi::Constant(d, 1));
    for (int n = 1; n < d; ++n)
        h.insert(n, n) = p.omega * n - p.kerr * n * (n - 1.0);
    h.makeCompressed();
    prune_small(h);
    return h;
}

std::vector<JumpTerm> stabilizer_jump_ops(const OscillatorParams& p, int d) {
    if (d < 2) throw std::invalid_argument("stabilizer_jump_ops: dimension must be >= 2");
    validate(p);
    std::vector<JumpTerm> terms;
    terms.reserve(2 * (d - 1));
    for (int n = 1; n < d; ++n) {
        const double root = std::sqrt(double(n));
        if (p.gamma_plus > 0.0)
            terms.push_back({p.gamma_plus * lorentzian_rate(n, p.n_plus, p.sigma_plus),
                             SparseOp(root * ketbra(d, n, n - 1))});
        if (p.gamma_minus > 0.0)
            terms.push_back({p.gamma_minus * lorentzian_rate(n, p.n_minus, p.sigma_minus),
                             SparseOp(root * ketbra(d, n - 1, n))});
    }
    return terms;
}

SparseOp coupling_hamiltonian(const NetworkSpec& net) {
    validate(net);
    const int n = static_cast<int>(net.oscillators.size());
    const long dim = net.layout.total_dim();
    SparseOp v(dim, dim);
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const double c = net.coupling(j, k);
            if (c == 0.0) continue;
            const SparseOp hop =
                SparseOp(embed_site(creation_matrix(net.layout.dims[j]), j, net.layout) *
                         embed_site(annihilation_matrix(net.layout.dims[k]), k, net.layout));
            v += SparseOp(-c * (hop + SparseOp(hop.adjoint())));
        }
    }
    prune_small(v);
    return v;
}

DissipatorParams sideband_parameters(const SidebandParams& s) {
    if (s.kappa <= 0.0) throw std::invalid_argument("sideband_parameters: kappa must be > 0");
    if (s.kerr <= 0.0) throw std::invalid_argument("sideband_parameters: kerr must be > 0");
    DissipatorParams out;
    out.gamma = 4.0 * s.g * s.g / s.kappa;
    out.sigma = s.kappa / (8.0 * s.kerr);
    out.n_plus = (s.delta_plus - s.omega0) / (2.0 * s.kerr);
    out.n_minus = -(s.delta_minus - s.omega0) / (2.0 * s.kerr);
    return out;
}

NetworkSpec shifted_to_reference(NetworkSpec net) {
    if (net.oscillators.empty()) return net;
    const double ref = net.oscillators.front().omega;
    for (auto& p : net.oscillators) p.omega -= ref;
    return net;
}

}  // namespace kerrsync
