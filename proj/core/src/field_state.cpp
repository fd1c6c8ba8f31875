#include "entropic/field_state.hpp"

#include <cmath>
#include <stdexcept>

namespace entropic {

Potential Potential::none() { return Potential(Kind::none, {}); }

Potential Potential::harmonic(double mass, double omega) {
    if (!(mass > 0.0) || !(omega > 0.0)) {
        throw std::invalid_argument("harmonic potential needs positive mass and omega");
    }
    return Potential(Kind::harmonic, {mass, omega});
}

Potential Potential::double_well(double quartic, double quadratic) {
    if (!(quartic > 0.0)) throw std::invalid_argument("double well needs positive quartic term");
    return Potential(Kind::double_well, {quartic, quadratic});
}

Potential Potential::barrier(double height, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("barrier needs positive width");
    return Potential(Kind::barrier, {height, width});
}

Potential Potential::polynomial(std::vector<double> coefficients) {
    for (double c : coefficients) {
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite potential coefficient");
    }
    return Potential(Kind::polynomial, std::move(coefficients));
}

double Potential::value(double x) const {
    switch (kind_) {
        case Kind::none:
            return 0.0;
        case Kind::harmonic:
            return 0.5 * params_[0] * params_[1] * params_[1] * x * x;
        case Kind::double_well:
            return params_[0] * x * x * x * x - params_[1] * x * x;
        case Kind::barrier:
            return params_[0] * std::exp(-0.5 * x * x / (params_[1] * params_[1]));
        case Kind::polynomial: {
            double acc = 0.0;
            for (std::size_t k = params_.size(); k-- > 0;) acc = acc * x + params_[k];
            return acc;
        }
    }
    return 0.0;
}

ScalarField Potential::sample(const Grid& grid) const {
    ScalarField out(grid);
    if (grid.dim() == 1) {
        for (int i = 0; i < grid.extent(0); ++i) out.at(i) = value(grid.coord(0, i));
    } else {
        for (int i = 0; i < grid.extent(0); ++i) {
            for (int j = 0; j < grid.extent(1); ++j) {
                out.at(i, j) = value(grid.coord(0, i)) + value(grid.coord(1, j));
            }
        }
    }
    return out;
}

} // namespace entropic
