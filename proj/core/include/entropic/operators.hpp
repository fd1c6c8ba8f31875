#pragma once

#include "entropic/scalar_field.hpp"

namespace entropic {

/// Second-order central difference along one axis. Periodic grids wrap;
/// reflecting grids use one-sided second-order stencils at the walls.
ScalarField gradient(const ScalarField& f, int axis = 0);

/// Standard 3-point second-derivative stencil along one axis, boundary
/// handling as in gradient (4-point one-sided at reflecting walls).
ScalarField second_derivative(const ScalarField& f, int axis);

/// Sum of per-axis second derivatives.
ScalarField laplacian(const ScalarField& f);

/// Plain Riemann sum (periodic) or trapezoid rule (reflecting). Summation
/// order is fixed so results do not depend on evaluation parallelism.
double integrate(const ScalarField& f);

/// Compensated (Kahan) variant of integrate, used where conserved
/// quantities are tracked across long runs.
double integrate_compensated(const ScalarField& f);

/// Scales a nonnegative field to unit integral. Throws std::domain_error on
/// negative values or an all-zero field.
DensityField normalize(const ScalarField& rho);

/// First raw moment of a density along an axis.
double density_mean(const DensityField& rho, int axis = 0);

/// Central second moment of a density along an axis.
double density_variance(const DensityField& rho, int axis = 0);

/// L1 distance integral(|a - b|) between two fields on the same grid.
double l1_distance(const ScalarField& a, const ScalarField& b);

/// Max-norm distance between two fields on the same grid.
double linf_distance(const ScalarField& a, const ScalarField& b);

} // namespace entropic
