#include "entropic/drift_potential.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "entropic/operators.hpp"

namespace entropic {

namespace {

double poly_eval(std::span<const double> c, double x) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
}

double poly_deriv(std::span<const double> c, double x) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        acc = acc * x + static_cast<double>(k) * c[k];
    }
    return acc;
}

// Bilinear interpolation on a 2D grid; 1D falls back to ScalarField.
double interp_any(const ScalarField& f, std::span<const double> x) {
    const Grid& g = f.grid();
    if (g.dim() == 1) return f.interpolate(x[0]);
    auto locate = [&](int axis, double xv, int& i0, double& frac) {
        const int n = g.extent(axis);
        const double t = (xv - g.x_min(axis)) / g.spacing(axis);
        if (t < -1e-9 || t > static_cast<double>(n - 1) + 1e-9) {
            throw std::domain_error("tabulated drift potential evaluated outside domain");
        }
        i0 = static_cast<int>(std::floor(t));
        if (i0 < 0) i0 = 0;
        if (i0 > n - 2) i0 = n - 2;
        frac = t - static_cast<double>(i0);
    };
    int i0, j0;
    double fx, fy;
    locate(0, x[0], i0, fx);
    locate(1, x[1], j0, fy);
    const double v00 = f.at(i0, j0), v10 = f.at(i0 + 1, j0);
    const double v01 = f.at(i0, j0 + 1), v11 = f.at(i0 + 1, j0 + 1);
    return v00 * (1 - fx) * (1 - fy) + v10 * fx * (1 - fy) + v01 * (1 - fx) * fy +
           v11 * fx * fy;
}

} // namespace

struct DriftPotential::Impl {
    enum class Kind { polynomial, tabulated, gaussian_family } kind;

    std::vector<std::vector<double>> coeffs; // polynomial / gaussian_family
    std::vector<ScalarField> table;          // [0] samples, [1..dim] gradients

    double value(std::span<const double> x) const {
        switch (kind) {
            case Kind::polynomial: {
                if (x.size() < coeffs.size()) {
                    throw std::invalid_argument("drift potential: position arity too small");
                }
                double s = 0.0;
                for (std::size_t a = 0; a < coeffs.size(); ++a) s += poly_eval(coeffs[a], x[a]);
                return s;
            }
            case Kind::tabulated:
                return interp_any(table[0], x);
            case Kind::gaussian_family: {
                const double log_sigma = poly_eval(coeffs[0], x[0]);
                return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e) + log_sigma;
            }
        }
        return 0.0;
    }

    double gradient(std::span<const double> x, int coord) const {
        switch (kind) {
            case Kind::polynomial:
                if (static_cast<std::size_t>(coord) >= coeffs.size()) return 0.0;
                return poly_deriv(coeffs[static_cast<std::size_t>(coord)], x[coord]);
            case Kind::tabulated:
                return interp_any(table[static_cast<std::size_t>(coord) + 1], x);
            case Kind::gaussian_family:
                return coord == 0 ? poly_deriv(coeffs[0], x[0]) : 0.0;
        }
        return 0.0;
    }
};

DriftPotential::DriftPotential(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

DriftPotential DriftPotential::constant(double value) {
    return polynomial_nd({{value}});
}

DriftPotential DriftPotential::polynomial(std::vector<double> coefficients) {
    return polynomial_nd({std::move(coefficients)});
}

DriftPotential DriftPotential::polynomial_nd(std::vector<std::vector<double>> per_coord) {
    if (per_coord.empty()) throw std::invalid_argument("polynomial drift needs coefficients");
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::polynomial;
    impl->coeffs = std::move(per_coord);
    for (auto& c : impl->coeffs) {
        if (c.empty()) c.push_back(0.0);
        for (double v : c) {
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite drift coefficient");
        }
    }
    return DriftPotential(impl);
}

DriftPotential DriftPotential::tabulated(ScalarField samples) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::tabulated;
    impl->table.reserve(static_cast<std::size_t>(samples.grid().dim()) + 1);
    impl->table.push_back(samples);
    for (int ax = 0; ax < samples.grid().dim(); ++ax) {
        impl->table.push_back(entropic::gradient(samples, ax));
    }
    return DriftPotential(impl);
}

DriftPotential DriftPotential::gaussian_family(std::vector<double> log_sigma_coefficients) {
    if (log_sigma_coefficients.empty()) {
        throw std::invalid_argument("gaussian-family drift needs log-sigma coefficients");
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::gaussian_family;
    impl->coeffs = {std::move(log_sigma_coefficients)};
    return DriftPotential(impl);
}

int DriftPotential::n_coords_hint() const {
    switch (impl_->kind) {
        case Impl::Kind::polynomial:
            return static_cast<int>(impl_->coeffs.size());
        case Impl::Kind::tabulated:
            return impl_->table[0].grid().dim();
        case Impl::Kind::gaussian_family:
            return 1;
    }
    return 1;
}

double DriftPotential::value(std::span<const double> x) const {
    if (x.empty()) throw std::invalid_argument("drift potential: empty position");
    return impl_->value(x);
}

double DriftPotential::gradient(std::span<const double> x, int coord) const {
    if (coord < 0 || static_cast<std::size_t>(coord) >= x.size()) {
        throw std::invalid_argument("drift potential: coordinate out of range");
    }
    return impl_->gradient(x, coord);
}

ScalarField DriftPotential::sample(const Grid& grid) const {
    ScalarField out(grid);
    if (grid.dim() == 1) {
        for (int i = 0; i < grid.extent(0); ++i) {
            const double x = grid.coord(0, i);
            out.at(i) = value(std::span<const double>(&x, 1));
        }
    } else {
        for (int i = 0; i < grid.extent(0); ++i) {
            for (int j = 0; j < grid.extent(1); ++j) {
                const std::array<double, 2> x{grid.coord(0, i), grid.coord(1, j)};
                out.at(i, j) = value(std::span<const double>(x.data(), 2));
            }
        }
    }
    return out;
}

} // namespace entropic
