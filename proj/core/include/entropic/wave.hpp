#pragma once

#include <complex>
#include <vector>

#include "entropic/field_state.hpp"
#include "entropic/model_params.hpp"
#include "entropic/scalar_field.hpp"

namespace entropic {

/// Complex wave values on a 1D grid with unit L2 norm (within 1e-10).
struct WaveField {
    Grid grid;
    std::vector<std::complex<double>> values;
    double time = 0.0;
};

/// Quadrature integral of |psi|^2.
double wave_norm(const WaveField& psi);

/// Density |psi|^2 as a field (not renormalized).
ScalarField wave_density(const WaveField& psi);

/// psi = sqrt(rho) exp(i phi / k); the result is renormalized on the grid so
/// its discrete norm is exactly 1. k must be positive.
WaveField from_fields(const DensityField& rho, const ScalarField& phi, double k);

/// Inverse map: rho = |psi|^2 and phi = k arg(psi), phase-unwrapped outward
/// from the point of maximum |psi| by nearest-branch increments. phi is
/// meaningful only on the mask |psi|^2 > 1e-6 max; outside it the last valid
/// value is carried. A masked-in point separated from the seed by a
/// near-node gap raises NumericalError (phase-unwrap failure).
struct WaveFields {
    DensityField rho;
    ScalarField phi;
    std::vector<bool> mask;
};
WaveFields to_fields(const WaveField& psi, double k);

WaveField conjugate(WaveField psi);

/// L2 norm of the nonlinear term (k^2/2 - 4 xi) m^AB (d_A d_B |psi|)/|psi| psi
/// over the masked grid, with the coefficient reported separately. The
/// coefficient vanishes identically at k = sqrt(8 xi).
struct NonlinearResidual {
    double coefficient = 0.0;
    double residual = 0.0;
};
NonlinearResidual nonlinear_residual(const WaveField& psi, double k, const ModelParams& params);

} // namespace entropic
