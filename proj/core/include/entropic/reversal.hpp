#pragma once

#include "entropic/drift_potential.hpp"
#include "entropic/scalar_field.hpp"

namespace entropic {

/// Bayes-reversed kernel P(x|x') over x for a fixed arrival point x':
/// proportional to rho(x) P(x'|x), normalized on the grid. The forward
/// normalizer zeta(x) varies with x and is included. rho is floored at
/// 1e-12 of its maximum. 1D grids only.
DensityField reverse_kernel(double x_prime, const DensityField& rho, const DriftPotential& dp,
                            double alpha, const Grid& grid);

/// Average over arrival points x' of the KL divergence from the reverse
/// kernel to its moment-matched Gaussian (in wrap-aware displacement
/// coordinates). Zero iff every reverse kernel is Gaussian; quantifies the
/// directionality of the inference-time construction.
double arrow_asymmetry(const DensityField& rho, const DriftPotential& dp, double alpha,
                       const Grid& grid);

} // namespace entropic
