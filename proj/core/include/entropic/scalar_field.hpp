#pragma once

#include <functional>
#include <span>
#include <vector>

#include "entropic/grid.hpp"

namespace entropic {

/// A real-valued function sampled on a Grid. Values are stored row-major
/// (axis 0 outer, axis 1 inner) and must stay finite.
class ScalarField {
public:
    explicit ScalarField(Grid grid);
    ScalarField(Grid grid, std::vector<double> values);

    /// Samples f at every grid point. 1D grids call f(x), 2D grids f(x, y)
    /// through the two-argument overload below.
    static ScalarField from_function(const Grid& grid, const std::function<double(double)>& f);
    static ScalarField from_function(const Grid& grid,
                                     const std::function<double(double, double)>& f);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    double at(int i) const { return values_[grid_.index(i)]; }
    double at(int i, int j) const { return values_[grid_.index(i, j)]; }
    double& at(int i) { return values_[grid_.index(i)]; }
    double& at(int i, int j) { return values_[grid_.index(i, j)]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    /// Linear interpolation at an in-domain position (1D grids).
    double interpolate(double x) const;

    /// Throws NumericalError if any value is non-finite.
    void check_finite(const char* context) const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s);
    ScalarField& operator+=(double s);

private:
    Grid grid_;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField f);

/// A ScalarField that is nonnegative and integrates to 1 (within 1e-8).
/// Construct through normalize() in operators.hpp or from_normalized().
class DensityField {
public:
    static constexpr double kNormTolerance = 1e-8;

    /// Validates nonnegativity and unit integral of an already-normalized field.
    static DensityField from_normalized(ScalarField field);

    const ScalarField& field() const { return field_; }
    const Grid& grid() const { return field_.grid(); }
    std::size_t size() const { return field_.size(); }
    double operator[](std::size_t i) const { return field_[i]; }
    std::span<const double> values() const { return field_.values(); }

private:
    friend DensityField normalize(const ScalarField&);
    explicit DensityField(ScalarField field) : field_(std::move(field)) {}

    ScalarField field_;
};

} // namespace entropic
