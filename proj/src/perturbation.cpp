#include "kerrsync/perturbation.hpp"

#include <cmath>
#include <stdexcept>

namespace kerrsync {

cplx lambda_minus(int m1, int m2, const OscillatorParams& p1,
                  const OscillatorParams& p2) {
    if (m1 < 1) throw std::invalid_argument("lambda_minus: m1 must be >= 1");
    if (m2 < 0) throw std::invalid_argument("lambda_minus: m2 must be >= 0");

    auto f1p = [&](int n) { return lorentzian_rate(n, p1.n_plus, p1.sigma_plus); };
    auto f1m = [&](int n) { return lorentzian_rate(n, p1.n_minus, p1.sigma_minus); };
    auto f2p = [&](int n) { return lorentzian_rate(n, p2.n_plus, p2.sigma_plus); };
    auto f2m = [&](int n) { return lorentzian_rate(n, p2.n_minus, p2.sigma_minus); };

    const double detuning_part =
        -p1.omega + p2.omega + 2.0 * p1.kerr * m1 - 2.0 * p2.kerr * m2 - 2.0 * p1.kerr;

    double damping = 0.0;
    damping += 0.5 * p1.gamma_plus * (m1 * f1p(m1) + (m1 + 1) * f1p(m1 + 1));
    damping += 0.5 * p1.gamma_minus * ((m1 - 1) * f1m(m1 - 1) + m1 * f1m(m1));
    damping += 0.5 * p2.gamma_plus * ((m2 + 2) * f2p(m2 + 2) + (m2 + 1) * f2p(m2 + 1));
    damping += 0.5 * p2.gamma_minus * ((m2 + 1) * f2m(m2 + 1) + m2 * f2m(m2));

    return cplx(-damping, -detuning_part);
}

std::vector<CoherenceElement> first_order_coherences(const OscillatorParams& p1,
                                                     const OscillatorParams& p2,
                                                     double c, int d1, int d2) {
    const Eigen::VectorXd pops1 = uncoupled_fock_populations(p1, d1);
    const Eigen::VectorXd pops2 = uncoupled_fock_populations(p2, d2);

    std::vector<CoherenceElement> elements;
    elements.reserve(static_cast<std::size_t>(d1 - 1) * (d2 - 1));
    for (int m1 = 1; m1 < d1; ++m1) {
        for (int m2 = 0; m2 + 1 < d2; ++m2) {
            const cplx lambda = lambda_minus(m1, m2, p1, p2);
            const double imbalance =
                pops1[m1] * pops2[m2] - pops1[m1 - 1] * pops2[m2 + 1];
            const cplx value = cplx(0.0, -1.0) * c *
                               std::sqrt(double(m1) * (m2 + 1.0)) * imbalance / lambda;
            elements.push_back({m1, m2, value, lambda});
        }
    }
    return elements;
}

double perturbative_sync(const OscillatorParams& p1, const OscillatorParams& p2,
                         double c, int d1, int d2) {
    cplx sum = 0.0;
    for (const CoherenceElement& el : first_order_coherences(p1, p2, c, d1, d2))
        sum += el.value;
    return 2.0 * std::abs(sum);
}

}  // namespace kerrsync
