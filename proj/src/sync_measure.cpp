#include "kerrsync/sync_measure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kerrsync {

FourierCoefficients relative_phase_fourier(const DensityMatrix& rho2, int k_max) {
    if (rho2.layout.n_sites() != 2)
        throw std::invalid_argument("relative_phase_fourier: state is not two-mode");
    const int d1 = rho2.layout.dims[0];
    const int d2 = rho2.layout.dims[1];
    if (k_max < 0) k_max = std::min(d1, d2) - 1;

    FourierCoefficients out;
    out.k_max = k_max;
    out.c.assign(2 * static_cast<std::size_t>(k_max) + 1, cplx(0.0, 0.0));
    for (int k = -k_max; k <= k_max; ++k) {
        cplx sum = 0.0;
        for (int n1 = 0; n1 < d1; ++n1) {
            const int m1 = n1 - k;
            if (m1 < 0 || m1 >= d1) continue;
            for (int n2 = 0; n2 < d2; ++n2) {
                const int m2 = n2 + k;
                if (m2 < 0 || m2 >= d2) continue;
                sum += rho2.rho(n1 * d2 + n2, m1 * d2 + m2);
            }
        }
        out.at(k) = sum;
    }
    return out;
}

PhaseDistribution phase_distribution(const FourierCoefficients& fourier, int n_grid) {
    if (n_grid < 8)
        throw std::invalid_argument("phase_distribution: grid too coarse");
    const int k_max = fourier.k_max;
    for (int k = 1; k <= k_max; ++k) {
        const double asym = std::abs(fourier.at(-k) - std::conj(fourier.at(k)));
        if (asym > 1e-10 * std::max(1.0, std::abs(fourier.at(k))))
            throw std::invalid_argument(
                "phase_distribution: coefficients lack conjugate symmetry");
    }

    const double two_pi = 2.0 * std::numbers::pi;
    PhaseDistribution dist;
    dist.fourier = fourier;
    dist.grid.resize(n_grid);
    for (int i = 0; i < n_grid; ++i) {
        const double phi = two_pi * i / n_grid;
        double p = fourier.at(0).real();
        for (int k = 1; k <= k_max; ++k)
            p += 2.0 * (fourier.at(k) * std::exp(cplx(0.0, -k * phi))).real();
        dist.grid[i] = p / two_pi;
    }

    if (dist.grid.minCoeff() < -1e-10)
        throw std::runtime_error("phase_distribution: negative density beyond tolerance");
    const double norm = dist.grid.sum() * two_pi / n_grid;
    if (std::abs(norm - 1.0) > 1e-8)
        throw std::runtime_error("phase_distribution: distribution not normalized");

    dist.s_measure = two_pi * dist.grid.maxCoeff() - 1.0;
    return dist;
}

double sync_measure(const PhaseDistribution& dist) {
    return 2.0 * std::numbers::pi * dist.grid.maxCoeff() - 1.0;
}

double pairwise_sync(const DensityMatrix& dm, int first, int second,
                     int k_max, int n_grid) {
    if (first == second)
        throw std::invalid_argument("pairwise_sync: pair must name two distinct sites");
    DensityMatrix pair{reduced_layout(dm.layout, {first, second}),
                       partial_trace(dm.rho, dm.layout, {first, second})};
    return sync_measure(phase_distribution(relative_phase_fourier(pair, k_max), n_grid));
}

}  // namespace kerrsync
