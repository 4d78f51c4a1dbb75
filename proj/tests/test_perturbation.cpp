#include "kerrsync/perturbation.hpp"

#include <doctest.h>

#include "helpers.hpp"
#include "kerrsync/liouvillian.hpp"
#include "kerrsync/sync_measure.hpp"

using namespace kerrsync;
using kerrsync::testing::stabilized_site;

TEST_CASE("lambda_minus imaginary part tracks the exchange resonance") {
    OscillatorParams p1 = stabilized_site();
    OscillatorParams p2 = stabilized_site();

    // Equal frequencies: the m1 = m2 + 1 ladder pair exchanges resonantly.
    for (int m2 = 0; m2 < 4; ++m2)
        CHECK(std::abs(lambda_minus(m2 + 1, m2, p1, p2).imag()) < 1e-14);

    // Detuning -2K moves the resonance to the m1 = m2 pair.
    p2.omega = p1.omega + 2.0 * p1.kerr;
    for (int m2 = 1; m2 < 4; ++m2)
        CHECK(std::abs(lambda_minus(m2, m2, p1, p2).imag()) < 1e-14);

    CHECK_THROWS_AS(lambda_minus(0, 1, p1, p2), std::invalid_argument);
}

TEST_CASE("lambda_minus real part is strictly dissipative") {
    const OscillatorParams p = stabilized_site();
    for (int m1 = 1; m1 < 6; ++m1)
        for (int m2 = 0; m2 < 5; ++m2) CHECK(lambda_minus(m1, m2, p, p).real() < 0.0);

    // Without dissipation the rate is purely imaginary.
    OscillatorParams closed = p;
    closed.gamma_plus = closed.gamma_minus = 0.0;
    closed.omega = 1.3;
    for (int m1 = 1; m1 < 4; ++m1)
        CHECK(lambda_minus(m1, 2, closed, closed).real() == 0.0);
}

TEST_CASE("first-order coherences vanish without drive or imbalance") {
    const OscillatorParams p = stabilized_site();
    for (const auto& element : first_order_coherences(p, p, 0.0, 8, 8))
        CHECK(std::abs(element.value) == 0.0);

    // A flat population profile has no imbalance to push against.
    OscillatorParams flat = p;
    flat.n_plus = flat.n_minus = 2.0;
    for (const auto& element : first_order_coherences(flat, flat, 0.1, 8, 8))
        CHECK(std::abs(element.value) < 1e-15);
}

TEST_CASE("perturbative S is exactly linear in the coupling") {
    const OscillatorParams p1 = stabilized_site();
    OscillatorParams p2 = stabilized_site();
    p2.omega = -20.0;
    const double s1 = perturbative_sync(p1, p2, 0.05, 10, 10);
    const double s2 = perturbative_sync(p1, p2, 0.10, 10, 10);
    CHECK(s2 == doctest::Approx(2.0 * s1).epsilon(1e-14));
    CHECK(s1 > 0.0);
}

TEST_CASE("perturbative S is symmetric in the detuning sign") {
    const OscillatorParams p1 = stabilized_site();
    for (double delta : {3.0, 11.0, 20.0}) {
        OscillatorParams plus = stabilized_site();
        plus.omega = -delta;
        OscillatorParams minus = stabilized_site();
        minus.omega = delta;
        const double s_plus = perturbative_sync(p1, plus, 0.05, 10, 10);
        const double s_minus = perturbative_sync(p1, minus, 0.05, 10, 10);
        CHECK(std::abs(s_plus - s_minus) < 1e-10);
    }
}

TEST_CASE("perturbative S peaks at the blockade-lifting detunings") {
    const OscillatorParams p1 = stabilized_site();
    const double kerr = p1.kerr;
    double best = -1.0;
    double best_delta = 0.0;
    double at_zero = 0.0, at_one = 0.0;
    for (int step = -30; step <= 30; ++step) {
        const double delta = static_cast<double>(step);
        OscillatorParams p2 = stabilized_site();
        p2.omega = -delta;
        const double s = perturbative_sync(p1, p2, 0.05, 10, 10);
        if (step == 0) at_zero = s;
        if (step == 1) at_one = s;
        if (s > best) {
            best = s;
            best_delta = std::abs(delta);
        }
    }
    CHECK(best_delta == doctest::Approx(2.0 * kerr));
    // The blockade leaves a local minimum between the two resonances.
    CHECK(at_zero < at_one);
}

TEST_CASE("first order agrees with the solver at weak coupling") {
    const double delta = 20.0;
    const int d = 9;
    const OscillatorParams site = stabilized_site();
    OscillatorParams detuned = stabilized_site();
    detuned.omega = -delta;

    double prev = 0.0;
    for (double v : {0.05, 0.025}) {
        const NetworkSpec net = kerrsync::testing::two_site(delta, v, d);
        const DensityMatrix dm =
            solve_steady_state(build_network_liouvillian(net), net.layout);
        const double s_full = pairwise_sync(dm, 0, 1);
        const double s_pert = perturbative_sync(site, detuned, v, d, d);
        const double rel = std::abs(s_full - s_pert) / s_pert;
        CHECK(rel < 0.02);
        if (prev > 0.0) CHECK(prev / rel > 3.0);
        prev = rel;
    }
}
