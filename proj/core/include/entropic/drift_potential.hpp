#pragma once

#include <memory>
#include <span>
#include <vector>

#include "entropic/scalar_field.hpp"

namespace entropic {

/// The drift entropy S(x) on configuration space. Only gradients of S are
/// dynamically meaningful; additive constants follow the convention of the
/// concrete representation.
///
/// Representations:
///  - polynomial: S(x) = sum_A poly_A(x^A), one coefficient list per coordinate
///    (separable; covers constants, linear drifts, and anharmonic profiles)
///  - tabulated: samples on a grid, linear interpolation between points
///  - gaussian_family: p(y|x) normal with variance sigma_y(x)^2 against a
///    uniform measure, so S(x) = 0.5 * ln(2 pi e sigma_y(x)^2) with
///    ln sigma_y given as a polynomial in x (1D).
class DriftPotential {
public:
    static DriftPotential constant(double value = 0.0);
    static DriftPotential polynomial(std::vector<double> coefficients); // 1D convenience
    static DriftPotential polynomial_nd(std::vector<std::vector<double>> per_coord);
    static DriftPotential tabulated(ScalarField samples);
    static DriftPotential gaussian_family(std::vector<double> log_sigma_coefficients);

    int n_coords_hint() const;

    /// S at a configuration point (size = number of coordinates).
    double value(std::span<const double> x) const;
    double value(double x) const { return value(std::span<const double>(&x, 1)); }

    /// dS/dx^A at a configuration point.
    double gradient(std::span<const double> x, int coord) const;
    double gradient(double x) const { return gradient(std::span<const double>(&x, 1), 0); }

    /// Samples S on a grid (grid dim must match the representation arity).
    ScalarField sample(const Grid& grid) const;

private:
    struct Impl;
    explicit DriftPotential(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

} // namespace entropic
