#include "kerrsync/liouvillian.hpp"

#include <doctest.h>

#include "helpers.hpp"

using namespace kerrsync;
using kerrsync::testing::dense;
using kerrsync::testing::random_hermitian;
using kerrsync::testing::stabilized_site;

namespace {

// Dense reference action: -i[H, rho] + sum rate (L rho L+ - 1/2 {L+L, rho}),
// assembled from matrix products only. Applies the same oscillator-1 frame
// shift as the production builder.
DenseOp oracle_action(const NetworkSpec& net, const DenseOp& rho) {
    const NetworkSpec frame = shifted_to_reference(net);
    const long dim = frame.layout.total_dim();
    DenseOp h = DenseOp::Zero(dim, dim);
    for (int j = 0; j < frame.layout.n_sites(); ++j)
        h += dense(embed_site(
            site_hamiltonian(frame.oscillators[static_cast<std::size_t>(j)],
                             frame.layout.dims[static_cast<std::size_t>(j)]),
            j, frame.layout));
    h += dense(coupling_hamiltonian(frame));

    DenseOp out = cplx(0.0, -1.0) * (h * rho - rho * h);
    for (int j = 0; j < frame.layout.n_sites(); ++j) {
        const auto terms = stabilizer_jump_ops(
            frame.oscillators[static_cast<std::size_t>(j)],
            frame.layout.dims[static_cast<std::size_t>(j)]);
        for (const auto& term : terms) {
            const DenseOp l = dense(embed_site(term.op, j, frame.layout));
            const DenseOp ldl = l.adjoint() * l;
            out += term.rate * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("generator matches the dense reference on every basis matrix") {
    NetworkSpec net = kerrsync::testing::two_site(7.0, 0.25, 3);
    net.oscillators[0].omega = 1.0;
    net.oscillators[1].n_plus = 1.0;
    net.oscillators[1].n_minus = 2.0;
    const SparseOp gen = build_network_liouvillian(net);
    const long dim = net.layout.total_dim();
    double scale = 0.0;
    for (long k = 0; k < gen.outerSize(); ++k)
        for (SparseOp::InnerIterator it(gen, k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    for (long r = 0; r < dim; ++r)
        for (long c = 0; c < dim; ++c) {
            DenseOp basis = DenseOp::Zero(dim, dim);
            basis(r, c) = 1.0;
            const DenseOp got = unvec_density(gen * vec_density(basis), dim);
            const DenseOp expected = oracle_action(net, basis);
            REQUIRE((got - expected).cwiseAbs().maxCoeff() < 1e-10 * scale);
        }
}

TEST_CASE("closed anharmonic network leaves diagonal states invariant") {
    NetworkSpec net;
    OscillatorParams p;
    p.kerr = 3.0;
    p.omega = 2.0;
    p.sigma_plus = p.sigma_minus = 1.0;
    net.oscillators = {p, p};
    net.coupling = Eigen::MatrixXd::Zero(2, 2);
    net.layout = make_layout({3, 3});
    const SparseOp gen = build_network_liouvillian(net);

    DenseOp diag = DenseOp::Zero(9, 9);
    diag(0, 0) = 0.25;
    diag(4, 4) = 0.5;
    diag(8, 8) = 0.25;
    CHECK((gen * vec_density(diag)).norm() < 1e-13);
}

TEST_CASE("pure decay annihilates the network vacuum") {
    NetworkSpec net = kerrsync::testing::two_site(0.0, 0.0, 3);
    for (auto& p : net.oscillators) p.gamma_plus = 0.0;
    const SparseOp gen = build_network_liouvillian(net);
    DenseOp vacuum = DenseOp::Zero(9, 9);
    vacuum(0, 0) = 1.0;
    CHECK((gen * vec_density(vacuum)).norm() < 1e-13);
}

TEST_CASE("vec of the identity is a left null vector") {
    const NetworkSpec net = kerrsync::testing::two_site(5.0, 0.1, 4);
    const SparseOp gen = build_network_liouvillian(net);
    double scale = 0.0;
    for (long k = 0; k < gen.outerSize(); ++k)
        for (SparseOp::InnerIterator it(gen, k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    const long dim = net.layout.total_dim();
    const Eigen::VectorXcd vec_id = vec_density(DenseOp::Identity(dim, dim));
    CHECK((vec_id.adjoint() * gen).cwiseAbs().maxCoeff() < 1e-10 * scale);
}

TEST_CASE("generator preserves Hermiticity") {
    auto engine = kerrsync::testing::rng(21);
    const NetworkSpec net = kerrsync::testing::two_site(3.0, 0.2, 3);
    const SparseOp gen = build_network_liouvillian(net);
    for (int trial = 0; trial < 4; ++trial) {
        const DenseOp rho = random_hermitian(9, engine);
        const DenseOp drho = unvec_density(gen * vec_density(rho), 9);
        CHECK(hermiticity_deviation(drho) < 1e-12);
        CHECK(std::abs(drho.trace()) < 1e-12);
    }
}

TEST_CASE("generator conserves the bra-ket occupation difference") {
    const NetworkSpec net = kerrsync::testing::two_site(8.0, 0.3, 3);
    const SparseOp gen = build_network_liouvillian(net);
    const ModeLayout& layout = net.layout;
    const long dim = layout.total_dim();
    // Entry (i, j) couples target pair (r, c) = (i % dim, i / dim) to source
    // pair (r', c'); both pairs must carry the same occupation difference.
    for (long k = 0; k < gen.outerSize(); ++k)
        for (SparseOp::InnerIterator it(gen, k); it; ++it) {
            const long target_q = layout.total_occupation(it.row() % dim) -
                                  layout.total_occupation(it.row() / dim);
            const long source_q = layout.total_occupation(it.col() % dim) -
                                  layout.total_occupation(it.col() / dim);
            REQUIRE(target_q == source_q);
        }
}

TEST_CASE("assembly is deterministic") {
    const NetworkSpec net = kerrsync::testing::two_site(6.0, 0.15, 4);
    const SparseOp a = build_network_liouvillian(net);
    const SparseOp b = build_network_liouvillian(net);
    REQUIRE(a.nonZeros() == b.nonZeros());
    CHECK(SparseOp(a - b).norm() == 0.0);
}

TEST_CASE("capacity check names the superoperator size") {
    const NetworkSpec net = kerrsync::testing::two_site(0.0, 0.1, 4);
    CHECK(estimate_liouvillian_bytes(net) > 0.0);
    try {
        build_network_liouvillian(net, 1e-9);
        FAIL("expected a capacity error");
    } catch (const std::runtime_error& e) {
        // Total dimension 16, superoperator side 256.
        CHECK(std::string(e.what()).find("256") != std::string::npos);
    }
}
