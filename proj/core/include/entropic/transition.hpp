#pragma once

#include <span>
#include <vector>

#include "entropic/drift_potential.hpp"
#include "entropic/model_params.hpp"
#include "entropic/scalar_field.hpp"

namespace entropic {

/// Gaussian-regime short-step moments: mean shift (1/alpha_n) dS/dx^A and
/// per-coordinate variance 1/alpha_n.
struct TransitionMoments {
    std::vector<double> mean_shift;
    std::vector<double> covariance_diag;
};

/// Maximum-entropy single-step kernel P(x'|x) ~ exp[S(x') - (alpha/2)|x'-x|^2],
/// discretized and normalized on the grid over x'. All coordinates share one
/// multiplier alpha here; per-particle multipliers enter through
/// transition_moments. Throws PrecisionError when the grid truncates more
/// than 1e-10 of the kernel mass.
DensityField transition_density(std::span<const double> x, const DriftPotential& dp,
                                double alpha, const Grid& grid);

inline DensityField transition_density(double x, const DriftPotential& dp, double alpha,
                                       const Grid& grid) {
    return transition_density(std::span<const double>(&x, 1), dp, alpha, grid);
}

/// Short-step drift and fluctuation moments at a configuration point:
/// mean_shift_A = (1/alpha_n) dS/dx^A = b^A dt with b^A = eta m^AB d_B S.
TransitionMoments transition_moments(std::span<const double> x, const DriftPotential& dp,
                                     const ModelParams& params);

/// Discretized entropy objective -sum P log(P/Q) + sum P S over normalized P,
/// with quadrature weights. Exposed for independent checks of the maximizer.
double variational_objective(const ScalarField& p, const ScalarField& prior_q,
                             const ScalarField& entropy_s);

/// Maximizes the discretized objective by damped multiplicative fixed-point
/// ascent (P <- sqrt(P * Q e^S), renormalized; damping 0.5, cap 10000) and
/// returns the total-variation distance between the numerical maximizer and
/// the closed-form transition_density. Validates the analytic maximization.
double variational_gap(std::span<const double> x, const DriftPotential& dp, double alpha,
                       const Grid& grid);

inline double variational_gap(double x, const DriftPotential& dp, double alpha,
                              const Grid& grid) {
    return variational_gap(std::span<const double>(&x, 1), dp, alpha, grid);
}

/// Information metric of configuration space and the mass tensor it induces.
struct InformationMetric {
    int n_coords = 0;
    std::vector<double> gamma; // row-major n_coords x n_coords
    std::vector<double> mass;  // (eta dt / C) * gamma

    double gamma_at(int a, int b) const { return gamma[static_cast<std::size_t>(a) * n_coords + b]; }
    double mass_at(int a, int b) const { return mass[static_cast<std::size_t>(a) * n_coords + b]; }
};

/// Evaluates gamma_AB = C * int dx' P(x'|x) d_A log P d_B log P by quadrature
/// over the grid and central finite differences in x. In the Gaussian regime
/// this recovers C * alpha_n * delta_AB. C defaults to dt when non-positive.
InformationMetric information_metric(const ModelParams& params, const DriftPotential& dp,
                                     std::span<const double> x, const Grid& grid,
                                     double c_scale = 0.0);

} // namespace entropic
