#include "kerrsync/liouvillian.hpp"

#include <stdexcept>
#include <string>

namespace kerrsync {

double estimate_liouvillian_bytes(const NetworkSpec& net) {
    const double dim = static_cast<double>(net.layout.total_dim());
    const int n_sites = net.layout.n_sites();
    int n_pairs = 0;
    for (int j = 0; j < n_sites; ++j)
        for (int k = j + 1; k < n_sites; ++k)
            if (net.coupling(j, k) != 0.0) ++n_pairs;
    // Entries per superoperator row: ~2 from the anharmonic diagonal, ~4 per
    // site from its jump channels, ~4 per coupled pair from the hopping terms.
    const double nnz = dim * dim * (2.0 + 4.0 * n_sites + 4.0 * n_pairs);
    // 48 bytes per entry covers triplet staging plus the compressed result;
    // factor 8 leaves headroom for sparse-LU fill-in during the solve.
    return 48.0 * nnz * 8.0;
}

SparseOp build_network_liouvillian(const NetworkSpec& net, double memory_budget_gb) {
    validate(net);
    const double budget_bytes = memory_budget_gb * 1024.0 * 1024.0 * 1024.0;
    if (estimate_liouvillian_bytes(net) > budget_bytes) {
        const double dim = static_cast<double>(net.layout.total_dim());
        throw std::runtime_error(
            "liouvillian: superoperator of size dim^2 = " +
            std::to_string(static_cast<long long>(dim * dim)) +
            " exceeds the memory budget of " + std::to_string(memory_budget_gb) +
            " GB");
    }

    const NetworkSpec frame = shifted_to_reference(net);
    const ModeLayout& layout = frame.layout;
    const long dim = layout.total_dim();

    SparseOp h(dim, dim);
    for (int s = 0; s < layout.n_sites(); ++s)
        h += embed_site(site_hamiltonian(frame.oscillators[s], layout.dims[s]), s, layout);
    h += coupling_hamiltonian(frame);
    prune_small(h);

    SparseOp gen = hamiltonian_superop(h);
    for (int s = 0; s < layout.n_sites(); ++s)
        for (const JumpTerm& term : stabilizer_jump_ops(frame.oscillators[s], layout.dims[s]))
            gen += SparseOp(term.rate *
                            dissipator_superop(embed_site(term.op, s, layout)));
    prune_small(gen);
    return gen;
}

}  // namespace kerrsync
