#include "entropic/scalar_field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "entropic/errors.hpp"
#include "entropic/operators.hpp"

namespace entropic {

ScalarField::ScalarField(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("field values do not match grid size");
    }
    check_finite("ScalarField");
}

ScalarField ScalarField::from_function(const Grid& grid,
                                       const std::function<double(double)>& f) {
    if (grid.dim() != 1) throw std::invalid_argument("1-argument sampling needs a 1D grid");
    ScalarField out(grid);
    for (int i = 0; i < grid.extent(0); ++i) out.at(i) = f(grid.coord(0, i));
    out.check_finite("ScalarField::from_function");
    return out;
}

ScalarField ScalarField::from_function(const Grid& grid,
                                       const std::function<double(double, double)>& f) {
    if (grid.dim() != 2) throw std::invalid_argument("2-argument sampling needs a 2D grid");
    ScalarField out(grid);
    for (int i = 0; i < grid.extent(0); ++i) {
        for (int j = 0; j < grid.extent(1); ++j) {
            out.at(i, j) = f(grid.coord(0, i), grid.coord(1, j));
        }
    }
    out.check_finite("ScalarField::from_function");
    return out;
}

double ScalarField::interpolate(double x) const {
    if (grid_.dim() != 1) throw std::invalid_argument("interpolate supports 1D grids");
    const int n = grid_.extent(0);
    const double h = grid_.spacing(0);
    const double t = (x - grid_.x_min(0)) / h;
    if (grid_.boundary() == Boundary::periodic) {
        double ti = std::floor(t);
        int i0 = static_cast<int>(ti) % n;
        if (i0 < 0) i0 += n;
        const int i1 = (i0 + 1) % n;
        const double frac = t - ti;
        return values_[grid_.index(i0)] * (1.0 - frac) + values_[grid_.index(i1)] * frac;
    }
    if (t < -1e-9 || t > static_cast<double>(n - 1) + 1e-9) {
        throw std::domain_error("interpolation point outside grid domain");
    }
    int i0 = static_cast<int>(std::floor(t));
    if (i0 < 0) i0 = 0;
    if (i0 > n - 2) i0 = n - 2;
    const double frac = t - static_cast<double>(i0);
    return values_[grid_.index(i0)] * (1.0 - frac) + values_[grid_.index(i0 + 1)] * frac;
}

void ScalarField::check_finite(const char* context) const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw NumericalError(std::string(context) + ": non-finite value at flat index " +
                                 std::to_string(i));
        }
    }
}

namespace {
void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("fields live on different grids");
}
} // namespace

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

ScalarField& ScalarField::operator+=(double s) {
    for (double& v : values_) v += s;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) {
    a += b;
    return a;
}

ScalarField operator-(ScalarField a, const ScalarField& b) {
    a -= b;
    return a;
}

ScalarField operator*(double s, ScalarField f) {
    f *= s;
    return f;
}

DensityField DensityField::from_normalized(ScalarField field) {
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (field[i] < 0.0) throw std::domain_error("density has negative values");
    }
    const double total = integrate(field);
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw std::domain_error("density integral " + std::to_string(total) +
                                " deviates from 1 beyond tolerance");
    }
    return DensityField(std::move(field));
}

} // namespace entropic
