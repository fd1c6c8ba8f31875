#include "entropic/reversal.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "entropic/errors.hpp"
#include "entropic/operators.hpp"

namespace entropic {

namespace {

constexpr double kDensityFloorRel = 1e-12;

// log of the forward normalizer zeta(x) = int dx'' exp[S(x'') - a/2 (x''-x)^2],
// one value per grid point x, by quadrature on the same grid.
std::vector<double> log_forward_normalizer(const ScalarField& entropy_s, double alpha,
                                           const Grid& grid) {
    const int n = grid.extent(0);
    std::vector<double> logzeta(static_cast<std::size_t>(n));
    std::vector<double> logterm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double xi = grid.coord(0, i);
        double peak = -1e300;
        for (int k = 0; k < n; ++k) {
            const double d = grid.displacement(0, grid.coord(0, k), xi);
            logterm[static_cast<std::size_t>(k)] = entropy_s.at(k) - 0.5 * alpha * d * d;
            peak = std::max(peak, logterm[static_cast<std::size_t>(k)]);
        }
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
            acc += std::exp(logterm[static_cast<std::size_t>(k)] - peak) *
                   grid.quadrature_weight(static_cast<std::size_t>(k));
        }
        logzeta[static_cast<std::size_t>(i)] = peak + std::log(acc);
    }
    return logzeta;
}

DensityField reverse_kernel_impl(double x_prime, const DensityField& rho,
                                 const ScalarField& entropy_s,
                                 const std::vector<double>& logzeta, double alpha,
                                 const Grid& grid) {
    const int n = grid.extent(0);
    double rho_max = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) rho_max = std::max(rho_max, rho[i]);
    if (!(rho_max > 0.0)) throw std::domain_error("reverse_kernel: density is identically zero");
    const double floor = kDensityFloorRel * rho_max;

    const double s_at_xprime = entropy_s.interpolate(x_prime);
    ScalarField logr(grid);
    for (int i = 0; i < n; ++i) {
        const double xi = grid.coord(0, i);
        const double d = grid.displacement(0, x_prime, xi);
        logr.at(i) = std::log(std::max(rho[grid.index(i)], floor)) + s_at_xprime -
                     0.5 * alpha * d * d - logzeta[static_cast<std::size_t>(i)];
    }
    double peak = logr[0];
    for (std::size_t i = 1; i < logr.size(); ++i) peak = std::max(peak, logr[i]);
    ScalarField r(grid);
    for (std::size_t i = 0; i < logr.size(); ++i) r[i] = std::exp(logr[i] - peak);
    return normalize(r);
}

// KL(r || g) where g is the moment-matched Gaussian in displacement
// coordinates delta = x - x_prime (wrap-aware), both normalized on the grid.
double kl_to_matched_gaussian(const DensityField& r, double x_prime, const Grid& grid) {
    const int n = grid.extent(0);
    std::vector<double> delta(static_cast<std::size_t>(n));
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        delta[static_cast<std::size_t>(i)] = grid.displacement(0, grid.coord(0, i), x_prime);
        mean += delta[static_cast<std::size_t>(i)] * r[grid.index(i)] *
                grid.quadrature_weight(grid.index(i));
    }
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = delta[static_cast<std::size_t>(i)] - mean;
        var += d * d * r[grid.index(i)] * grid.quadrature_weight(grid.index(i));
    }
    if (!(var > 0.0)) return 0.0;

    ScalarField g(grid);
    for (int i = 0; i < n; ++i) {
        const double d = delta[static_cast<std::size_t>(i)] - mean;
        g.at(i) = std::exp(-0.5 * d * d / var);
    }
    const DensityField gn = normalize(g);

    double kl = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double ri = r[i];
        if (ri <= 0.0) continue;
        kl += ri * std::log(ri / std::max(gn[i], 1e-300)) * grid.quadrature_weight(i);
    }
    return std::max(kl, 0.0);
}

} // namespace

DensityField reverse_kernel(double x_prime, const DensityField& rho, const DriftPotential& dp,
                            double alpha, const Grid& grid) {
    if (grid.dim() != 1) throw std::invalid_argument("reverse_kernel supports 1D grids");
    if (rho.grid() != grid) throw std::invalid_argument("reverse_kernel: density grid mismatch");
    if (!(alpha > 0.0)) throw std::invalid_argument("reverse_kernel: alpha must be positive");
    const ScalarField entropy_s = dp.sample(grid);
    const auto logzeta = log_forward_normalizer(entropy_s, alpha, grid);
    return reverse_kernel_impl(x_prime, rho, entropy_s, logzeta, alpha, grid);
}

double arrow_asymmetry(const DensityField& rho, const DriftPotential& dp, double alpha,
                       const Grid& grid) {
    if (grid.dim() != 1) throw std::invalid_argument("arrow_asymmetry supports 1D grids");
    const ScalarField entropy_s = dp.sample(grid);
    const auto logzeta = log_forward_normalizer(entropy_s, alpha, grid);

    const int n = grid.extent(0);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double xp = grid.coord(0, i);
        const DensityField r = reverse_kernel_impl(xp, rho, entropy_s, logzeta, alpha, grid);
        acc += kl_to_matched_gaussian(r, xp, grid);
    }
    return acc / static_cast<double>(n);
}

} // namespace entropic
