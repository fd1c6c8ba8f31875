#pragma once

#include <utility>
#include <vector>

#include "entropic/scalar_field.hpp"

namespace entropic {

/// The epistemic pair (rho, Phi) at one instant of entropic time. Phi is
/// action-like and defined up to an additive constant; every reported
/// observable must be invariant under Phi -> Phi + c.
struct FieldState {
    DensityField rho;
    ScalarField phi;
    double time = 0.0;

    FieldState(DensityField rho_, ScalarField phi_, double time_ = 0.0)
        : rho(std::move(rho_)), phi(std::move(phi_)), time(time_) {}
};

/// Scalar potential V(x) entering the generalized Hamilton-Jacobi equation.
class Potential {
public:
    enum class Kind { none, harmonic, double_well, barrier, polynomial };

    static Potential none();
    static Potential harmonic(double mass, double omega);
    /// V(x) = quartic x^4 - quadratic x^2
    static Potential double_well(double quartic, double quadratic);
    /// Smooth Gaussian bump V(x) = height exp(-x^2 / (2 width^2))
    static Potential barrier(double height, double width);
    static Potential polynomial(std::vector<double> coefficients);

    Kind kind() const { return kind_; }
    double value(double x) const;

    /// Samples V on the grid; 2D grids get the separable sum V(x0) + V(x1).
    ScalarField sample(const Grid& grid) const;

private:
    Potential(Kind kind, std::vector<double> params)
        : kind_(kind), params_(std::move(params)) {}

    Kind kind_;
    std::vector<double> params_;
};

} // namespace entropic
