#include "entropic/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entropic {

namespace {

void validate_axis(const AxisSpec& a) {
    if (a.n < Grid::kMinPoints) {
        throw std::invalid_argument("grid axis needs at least " +
                                    std::to_string(Grid::kMinPoints) + " points, got " +
                                    std::to_string(a.n));
    }
    if (!(a.x_max > a.x_min)) {
        throw std::invalid_argument("grid axis requires x_max > x_min");
    }
}

double axis_spacing(const AxisSpec& a, Boundary b) {
    const double len = a.x_max - a.x_min;
    return b == Boundary::periodic ? len / static_cast<double>(a.n)
                                   : len / static_cast<double>(a.n - 1);
}

} // namespace

Grid Grid::uniform(int n, double x_min, double x_max, Boundary boundary) {
    Grid g;
    g.dim_ = 1;
    g.boundary_ = boundary;
    g.axes_[0] = {n, x_min, x_max};
    validate_axis(g.axes_[0]);
    g.spacing_[0] = axis_spacing(g.axes_[0], boundary);
    g.size_ = static_cast<std::size_t>(n);
    return g;
}

Grid Grid::uniform2d(AxisSpec a, AxisSpec b, Boundary boundary) {
    Grid g;
    g.dim_ = 2;
    g.boundary_ = boundary;
    g.axes_[0] = a;
    g.axes_[1] = b;
    validate_axis(a);
    validate_axis(b);
    g.spacing_[0] = axis_spacing(a, boundary);
    g.spacing_[1] = axis_spacing(b, boundary);
    g.size_ = static_cast<std::size_t>(a.n) * static_cast<std::size_t>(b.n);
    return g;
}

std::vector<double> Grid::axis_coords(int axis) const {
    const int n = extent(axis);
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = coord(axis, i);
    return xs;
}

double Grid::quadrature_weight(std::size_t flat) const {
    double w = cell_volume();
    if (boundary_ == Boundary::periodic) return w;
    if (dim_ == 1) {
        const std::size_t n = size_;
        if (flat == 0 || flat + 1 == n) w *= 0.5;
        return w;
    }
    const int n1 = axes_[1].n;
    const int i = static_cast<int>(flat) / n1;
    const int j = static_cast<int>(flat) % n1;
    if (i == 0 || i == axes_[0].n - 1) w *= 0.5;
    if (j == 0 || j == n1 - 1) w *= 0.5;
    return w;
}

double Grid::fold(int axis, double x) const {
    const AxisSpec& a = axes_[check_axis(axis)];
    const double len = a.x_max - a.x_min;
    if (boundary_ == Boundary::periodic) {
        double y = std::fmod(x - a.x_min, len);
        if (y < 0.0) y += len;
        return a.x_min + y;
    }
    // Mirror reflection, folded onto [x_min, x_max] for arbitrarily large
    // excursions: reflecting twice across opposite walls is a 2L translation.
    double y = std::fmod(x - a.x_min, 2.0 * len);
    if (y < 0.0) y += 2.0 * len;
    if (y > len) y = 2.0 * len - y;
    return a.x_min + y;
}

double Grid::displacement(int axis, double a, double b) const {
    double d = a - b;
    if (boundary_ == Boundary::periodic) {
        const double len = length(axis);
        d = std::remainder(d, len);
    }
    return d;
}

bool Grid::operator==(const Grid& other) const {
    if (dim_ != other.dim_ || boundary_ != other.boundary_) return false;
    for (int ax = 0; ax < dim_; ++ax) {
        if (axes_[ax].n != other.axes_[ax].n || axes_[ax].x_min != other.axes_[ax].x_min ||
            axes_[ax].x_max != other.axes_[ax].x_max) {
            return false;
        }
    }
    return true;
}

int Grid::check_axis(int axis) const {
    if (axis < 0 || axis >= dim_) throw std::invalid_argument("grid axis out of range");
    return axis;
}

} // namespace entropic
