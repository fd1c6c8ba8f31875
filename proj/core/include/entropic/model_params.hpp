#pragma once

#include <cmath>
#include <vector>

#include "entropic/errors.hpp"

namespace entropic {

/// Physical parameters of the entropic model: per-particle constants m_n,
/// the unit-fixing constant eta, the Fisher coupling xi, and the step
/// duration dt. Derived quantities (step multipliers alpha_n, the diagonal
/// mass and diffusion tensors, and hbar for xi > 0) are exposed per
/// configuration-space coordinate A = particle * dim + axis.
class ModelParams {
public:
    ModelParams(std::vector<double> masses, double eta, double xi, double dt, int dim = 1);

    int n_particles() const { return static_cast<int>(masses_.size()); }
    int dim() const { return dim_; }
    int n_coords() const { return n_particles() * dim_; }

    double mass(int particle) const { return masses_.at(static_cast<std::size_t>(particle)); }
    double eta() const { return eta_; }
    double xi() const { return xi_; }
    double dt() const { return dt_; }

    int particle_of(int coord) const { return coord / dim_; }

    /// alpha_n = m_n / (eta * dt), the short-step Lagrange multiplier.
    double alpha(int particle) const { return mass(particle) / (eta_ * dt_); }
    double alpha_coord(int coord) const { return alpha(particle_of(coord)); }
    std::vector<double> multipliers() const;

    /// Diagonal mass tensor m_AB = m_n delta_AB and its inverse.
    double mass_coord(int coord) const { return mass(particle_of(coord)); }
    double inv_mass_coord(int coord) const { return 1.0 / mass_coord(coord); }

    /// Diffusion tensor entries D^AA = eta / (2 m_n).
    double diffusion_coord(int coord) const { return 0.5 * eta_ / mass_coord(coord); }

    bool quantum() const { return xi_ > 0.0; }

    /// hbar = sqrt(8 xi); requires xi > 0.
    double hbar() const {
        if (!(xi_ > 0.0)) throw std::domain_error("hbar undefined for xi <= 0");
        return std::sqrt(8.0 * xi_);
    }

private:
    std::vector<double> masses_;
    double eta_;
    double xi_;
    double dt_;
    int dim_;
};

/// hbar = sqrt(8 xi) for xi > 0; the value of k that removes the nonlinear
/// term of the combined wave equation.
double regraduate(double xi);

/// Multiplier for the quadratic step constraint <|dx|^2> = kappa in d
/// dimensions: an isotropic Gaussian with covariance (1/alpha) I has
/// expected squared step d/alpha, so alpha = d/kappa.
double multiplier_from_step_constraint(double kappa, int d);

} // namespace entropic
