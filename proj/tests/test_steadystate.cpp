#include "kerrsync/steadystate.hpp"

#include <doctest.h>

#include "helpers.hpp"
#include "kerrsync/liouvillian.hpp"

using namespace kerrsync;
using kerrsync::testing::stabilized_site;

namespace {

NetworkSpec single_site(const OscillatorParams& p, int d) {
    NetworkSpec net;
    net.oscillators = {p};
    net.coupling = Eigen::MatrixXd::Zero(1, 1);
    net.layout = make_layout({d});
    return net;
}

}  // namespace

TEST_CASE("detailed-balance populations at the reference working point") {
    // Exact recursion values for gamma+- = 1, n+ = 2, n- = 3, sigma = 0.2,
    // d = 10, evaluated independently in rational arithmetic.
    const double expected[10] = {
        8.942638118504440e-03, 3.473870961419032e-02, 9.032064499689485e-01,
        3.473870961419032e-02, 8.942638118504440e-03, 3.996488716676763e-03,
        2.252385162017328e-03, 1.442821805062218e-03, 1.002448890087623e-03,
        7.367099918180656e-04};
    const Eigen::VectorXd pops = uncoupled_fock_populations(stabilized_site(), 10);
    REQUIRE(pops.size() == 10);
    for (int m = 0; m < 10; ++m)
        CHECK(pops[m] == doctest::Approx(expected[m]).epsilon(1e-12));
    CHECK(pops.sum() == doctest::Approx(1.0).epsilon(1e-14));

    // The stabilized level dominates.
    int argmax = 0;
    pops.maxCoeff(&argmax);
    CHECK(argmax == 2);
    CHECK(pops[2] > 0.9);
}

TEST_CASE("population recursion limiting cases") {
    OscillatorParams p = stabilized_site();
    p.gamma_plus = 0.0;
    const Eigen::VectorXd decay = uncoupled_fock_populations(p, 6);
    CHECK(decay[0] == doctest::Approx(1.0));
    CHECK(decay.tail(5).cwiseAbs().maxCoeff() == 0.0);

    // Identical gain and damping profiles balance every ratio to one.
    p = stabilized_site();
    p.n_plus = p.n_minus = 2.0;
    const Eigen::VectorXd uniform = uncoupled_fock_populations(p, 8);
    for (int m = 0; m < 8; ++m) CHECK(uniform[m] == doctest::Approx(1.0 / 8.0));

    p = stabilized_site();
    p.gamma_minus = 0.0;
    CHECK_THROWS_AS(uncoupled_fock_populations(p, 6), std::invalid_argument);
    CHECK_THROWS_AS(uncoupled_fock_populations(stabilized_site(), 1), std::invalid_argument);
}

TEST_CASE("solver reproduces the single-site recursion") {
    const NetworkSpec net = single_site(stabilized_site(), 10);
    const SparseOp gen = build_network_liouvillian(net);
    SolveInfo info;
    const DensityMatrix dm = solve_steady_state(gen, net.layout, {}, &info);
    CHECK(info.residual <= 1e-10);
    CHECK(info.used_reduction);
    CHECK_NOTHROW(assert_valid_state(dm));

    const Eigen::VectorXd pops = uncoupled_fock_populations(stabilized_site(), 10);
    for (int m = 0; m < 10; ++m)
        CHECK(dm.rho(m, m).real() == doctest::Approx(pops[m]).epsilon(1e-9));
    // Off-diagonals vanish without coupling.
    DenseOp off = dm.rho;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pure decay settles into the vacuum") {
    OscillatorParams p = stabilized_site();
    p.gamma_plus = 0.0;
    const NetworkSpec net = single_site(p, 5);
    const SparseOp gen = build_network_liouvillian(net);
    const DensityMatrix dm = solve_steady_state(gen, net.layout);
    CHECK(dm.rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("uncoupled sites factorize into a product state") {
    NetworkSpec net;
    OscillatorParams q = stabilized_site();
    q.n_plus = 1.0;
    q.n_minus = 2.0;
    q.omega = 4.0;
    net.oscillators = {stabilized_site(), q};
    net.coupling = Eigen::MatrixXd::Zero(2, 2);
    net.layout = make_layout({8, 7});
    const SparseOp gen = build_network_liouvillian(net);
    const DensityMatrix dm = solve_steady_state(gen, net.layout);

    const Eigen::VectorXd p1 = uncoupled_fock_populations(net.oscillators[0], 8);
    const Eigen::VectorXd p2 = uncoupled_fock_populations(net.oscillators[1], 7);
    DenseOp expected = DenseOp::Zero(56, 56);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 7; ++b)
            expected(a * 7 + b, a * 7 + b) = p1[a] * p2[b];
    CHECK((dm.rho - expected).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("solver agrees with the dense nullspace oracle") {
    // Coupled, detuned pair small enough for a full spectral solve.
    NetworkSpec net = kerrsync::testing::two_site(20.0, 0.2, 4);
    for (auto& p : net.oscillators) {
        p.n_plus = 1.0;
        p.n_minus = 2.0;
    }
    const SparseOp gen = build_network_liouvillian(net);
    const DensityMatrix solved = solve_steady_state(gen, net.layout);
    const DensityMatrix oracle = dense_nullspace_oracle(gen, net.layout);
    CHECK((solved.rho - oracle.rho).cwiseAbs().maxCoeff() < 1e-8);

    const NetworkSpec site = single_site(stabilized_site(), 12);
    const SparseOp site_gen = build_network_liouvillian(site);
    const DensityMatrix site_solved = solve_steady_state(site_gen, site.layout);
    const DensityMatrix site_oracle = dense_nullspace_oracle(site_gen, site.layout);
    CHECK((site_solved.rho - site_oracle.rho).cwiseAbs().maxCoeff() < 1e-8);

    // The oracle refuses sizes where the dense spectrum is unaffordable.
    CHECK_THROWS_AS(
        dense_nullspace_oracle(build_network_liouvillian(kerrsync::testing::two_site(0.0, 0.1, 9)),
                               make_layout({9, 9})),
        std::invalid_argument);
}

TEST_CASE("steady state is invariant under a global frequency shift") {
    NetworkSpec net = kerrsync::testing::two_site(7.0, 0.1, 6);
    const DensityMatrix base =
        solve_steady_state(build_network_liouvillian(net), net.layout);
    for (auto& p : net.oscillators) p.omega += 13.7;
    const DensityMatrix shifted =
        solve_steady_state(build_network_liouvillian(net), net.layout);
    CHECK((base.rho - shifted.rho).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("truncation_residual reports the top-level weight per site") {
    DensityMatrix vacuum{make_layout({5}), DenseOp::Zero(5, 5)};
    vacuum.rho(0, 0) = 1.0;
    CHECK(truncation_residual(vacuum)[0] == 0.0);

    DensityMatrix uniform{make_layout({4}), DenseOp::Identity(4, 4) / 4.0};
    CHECK(truncation_residual(uniform)[0] == doctest::Approx(0.5));

    // Tail of the reference site: exact recursion values at d = 10 and the
    // d = 9 truncation one level tighter.
    const NetworkSpec net = single_site(stabilized_site(), 10);
    const DensityMatrix dm =
        solve_steady_state(build_network_liouvillian(net), net.layout);
    CHECK(truncation_residual(dm)[0] ==
          doctest::Approx(1.739158881905689e-03).epsilon(1e-9));

    const NetworkSpec tight = single_site(stabilized_site(), 9);
    const DensityMatrix dm9 =
        solve_steady_state(build_network_liouvillian(tight), tight.layout);
    CHECK(truncation_residual(dm9)[0] ==
          doctest::Approx(2.447073478632262e-03).epsilon(1e-9));

    // Two-site states report one tail per site.
    const NetworkSpec pair = kerrsync::testing::two_site(0.0, 0.0, 5);
    const DensityMatrix dm2 =
        solve_steady_state(build_network_liouvillian(pair), pair.layout);
    CHECK(truncation_residual(dm2).size() == 2);
}

TEST_CASE("degeneracy probe flags a closed anharmonic site") {
    NetworkSpec net;
    OscillatorParams p;
    p.kerr = 3.0;
    p.sigma_plus = p.sigma_minus = 1.0;
    net.oscillators = {p};
    net.coupling = Eigen::MatrixXd::Zero(1, 1);
    net.layout = make_layout({3});
    SolveOptions opt;
    opt.check_degeneracy = true;
    SolveInfo info;
    solve_steady_state(build_network_liouvillian(net), net.layout, opt, &info);
    CHECK(info.degenerate);

    // A stabilized site has a unique steady state.
    const NetworkSpec good = single_site(stabilized_site(), 8);
    solve_steady_state(build_network_liouvillian(good), good.layout, opt, &info);
    CHECK_FALSE(info.degenerate);
}

TEST_CASE("state validation rejects broken density matrices") {
    DensityMatrix bad{make_layout({2}), DenseOp::Identity(2, 2)};
    CHECK(trace_deviation(bad) == doctest::Approx(1.0));
    CHECK_THROWS_AS(assert_valid_state(bad), std::runtime_error);

    bad.rho = DenseOp::Zero(2, 2);
    bad.rho(0, 0) = 1.5;
    bad.rho(1, 1) = -0.5;
    CHECK(min_eigenvalue(bad) == doctest::Approx(-0.5));
    CHECK_THROWS_AS(assert_valid_state(bad), std::runtime_error);

    bad.rho = DenseOp::Zero(2, 2);
    bad.rho(0, 0) = 1.0;
    bad.rho(0, 1) = cplx(0.0, 1e-3);
    bad.rho(1, 0) = cplx(0.0, 1e-3);  // i-symmetric, not Hermitian
    CHECK_THROWS_AS(assert_valid_state(bad), std::runtime_error);
}
