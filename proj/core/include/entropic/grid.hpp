#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace entropic {

enum class Boundary { periodic, reflecting };

/// One axis of a uniform grid.
struct AxisSpec {
    int n = 0;
    double x_min = 0.0;
    double x_max = 0.0;
};

/// Uniform discretization of a 1D or 2D configuration-space domain.
///
/// Point layout depends on the boundary rule:
///   periodic:   n points covering [x_min, x_max), spacing (x_max - x_min)/n
///   reflecting: n points covering [x_min, x_max], spacing (x_max - x_min)/(n - 1)
///
/// Quadrature weights follow the same rule: plain Riemann sum for periodic
/// grids, trapezoid for reflecting ones.
class Grid {
public:
    static constexpr int kMinPoints = 8;

    static Grid uniform(int n, double x_min, double x_max, Boundary boundary);
    static Grid uniform2d(AxisSpec a, AxisSpec b, Boundary boundary);

    int dim() const { return dim_; }
    Boundary boundary() const { return boundary_; }

    int extent(int axis) const { return axes_[check_axis(axis)].n; }
    double x_min(int axis = 0) const { return axes_[check_axis(axis)].x_min; }
    double x_max(int axis = 0) const { return axes_[check_axis(axis)].x_max; }
    double spacing(int axis = 0) const { return spacing_[check_axis(axis)]; }
    double length(int axis = 0) const {
        return axes_[check_axis(axis)].x_max - axes_[check_axis(axis)].x_min;
    }

    /// Total number of grid points (product over axes).
    std::size_t size() const { return size_; }

    /// Volume element, product of spacings over axes.
    double cell_volume() const { return dim_ == 1 ? spacing_[0] : spacing_[0] * spacing_[1]; }

    double coord(int axis, int i) const {
        return axes_[check_axis(axis)].x_min + spacing_[axis] * static_cast<double>(i);
    }
    std::vector<double> axis_coords(int axis) const;

    std::size_t index(int i) const { return static_cast<std::size_t>(i); }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(axes_[1].n) +
               static_cast<std::size_t>(j);
    }

    /// Quadrature weight of a flat index (trapezoid endpoint halving on
    /// reflecting axes, uniform for periodic).
    double quadrature_weight(std::size_t flat) const;

    /// Maps a position into the domain: wraps for periodic, mirrors for
    /// reflecting boundaries.
    double fold(int axis, double x) const;

    /// Shortest displacement a - b respecting periodic wrap.
    double displacement(int axis, double a, double b) const;

    bool operator==(const Grid& other) const;
    bool operator!=(const Grid& other) const { return !(*this == other); }

private:
    Grid() = default;
    int check_axis(int axis) const;

    int dim_ = 0;
    Boundary boundary_ = Boundary::periodic;
    std::array<AxisSpec, 2> axes_{};
    std::array<double, 2> spacing_{};
    std::size_t size_ = 0;
};

} // namespace entropic
