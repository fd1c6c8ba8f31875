#pragma once

#include <span>
#include <vector>

#include "entropic/drift_potential.hpp"
#include "entropic/field_state.hpp"
#include "entropic/model_params.hpp"

namespace entropic {

/// Relative density floor applied inside sqrt(rho) and log(rho) in the
/// velocity and Fisher diagnostics.
constexpr double kFieldFloorRel = 1e-12;

/// Current velocity v^A = m^AB d_B Phi along one axis.
ScalarField current_velocity(const FieldState& s, const ModelParams& params, int axis = 0);

/// Osmotic velocity u^A = -(eta / 2 m_n) d_A log rho (floored).
ScalarField osmotic_velocity(const DensityField& rho, const ModelParams& params, int axis = 0);

/// Residual of the discrete Fick form |rho u + D grad rho| (max norm); the
/// two routes agree to O(spacing^2) on smooth densities.
double fick_residual(const DensityField& rho, const ModelParams& params, int axis = 0);

/// v, drift b = eta m^AB d_B S, and osmotic u along one axis for a state
/// whose Phi derives from (S, rho) as Phi = eta (S - log sqrt(rho)). The
/// decomposition identity v = b + u holds to machine precision because all
/// three use the same discrete gradient; violations beyond tol throw.
struct VelocityDecomposition {
    ScalarField v;
    ScalarField b;
    ScalarField u;
};
VelocityDecomposition decompose_velocity(const FieldState& s, const ModelParams& params,
                                         const DriftPotential& drift, int axis = 0,
                                         double tol = 1e-8);

/// Recovers the instantaneous drift entropy S = Phi / eta + log sqrt(rho).
ScalarField drift_entropy_from_state(const FieldState& s, const ModelParams& params);

/// Builds Phi = eta (S - log sqrt(rho)), the phase whose gradient is the
/// current velocity of the diffusive flow sourced by S.
ScalarField phi_from_drift_entropy(const ScalarField& entropy_s, const DensityField& rho,
                                   double eta);

/// Fisher information matrix I_AB = int (1/rho) d_A rho d_B rho, evaluated
/// as int rho d_A log rho d_B log rho (exact for log-polynomial densities),
/// plus its mass-contracted trace m^AB I_AB.
struct FisherResult {
    int n_coords = 0;
    std::vector<double> matrix; // row-major
    double contracted = 0.0;    // m^AB I_AB

    double at(int a, int b) const { return matrix[static_cast<std::size_t>(a) * n_coords + b]; }
};
FisherResult fisher_functional(const DensityField& rho, const ModelParams& params);

/// Quantum potential Q = -4 xi m^AB (d_A d_B sqrt(rho)) / sqrt(rho) with the
/// flux-conserving (mirrored at reflecting walls) 3-point stencil.
ScalarField quantum_potential(const DensityField& rho, const ModelParams& params);

/// Conserved generator of the coupled evolution:
///   H = int [ 1/2 rho m^AB d_A Phi d_B Phi + rho V ] + xi m^AB I_AB[rho].
/// The Fisher part uses the discrete Dirichlet form 4 sum (D+ sqrt(rho))^2
/// so that H is the exact invariant of the semi-discrete step_coupled flow.
double ensemble_hamiltonian(const FieldState& s, const ModelParams& params,
                            const Potential& V);

/// Diffusive stability bound on the solver substep, 0.2 m h^2 / hbar.
double coupled_stability_bound(const ModelParams& params, const Grid& grid);

/// One classical 4th-order (RK4) step of the coupled system
///   dt rho = -d_A (rho m^AB d_B Phi)
///   dt Phi = -1/2 m^AB d_A Phi d_B Phi - V + 4 xi m^AB (d_A d_B sqrt rho)/sqrt rho
/// The spatial operators form an exact discrete Hamiltonian pair, so mass is
/// conserved to rounding and H drifts only at the RK4 time order. rho is
/// clamped nonnegative and renormalized after the step; a normalization
/// drift beyond 1e-6 or any non-finite value raises NumericalError.
FieldState step_coupled(const FieldState& s, const ModelParams& params, const Potential& V,
                        double dt_solver);

/// max_t |H(t) - H(0)| / max(|H(0)|, 1e-12) over a trajectory.
double energy_drift(std::span<const FieldState> trajectory, const ModelParams& params,
                    const Potential& V);

} // namespace entropic
