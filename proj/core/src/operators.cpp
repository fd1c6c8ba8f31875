#include "entropic/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace entropic {

namespace {

// Applies a 1D stencil along `axis` of a (possibly 2D) field. The lambda
// receives a line accessor get(i) and writes through set(i, value).
template <typename Op>
ScalarField apply_along_axis(const ScalarField& f, int axis, Op op) {
    const Grid& g = f.grid();
    ScalarField out(g);
    if (g.dim() == 1) {
        auto get = [&](int i) { return f.at(i); };
        auto set = [&](int i, double v) { out.at(i) = v; };
        op(g.extent(0), g.spacing(0), get, set);
        return out;
    }
    if (axis == 0) {
        for (int j = 0; j < g.extent(1); ++j) {
            auto get = [&](int i) { return f.at(i, j); };
            auto set = [&](int i, double v) { out.at(i, j) = v; };
            op(g.extent(0), g.spacing(0), get, set);
        }
    } else {
        for (int i = 0; i < g.extent(0); ++i) {
            auto get = [&](int j) { return f.at(i, j); };
            auto set = [&](int j, double v) { out.at(i, j) = v; };
            op(g.extent(1), g.spacing(1), get, set);
        }
    }
    return out;
}

} // namespace

ScalarField gradient(const ScalarField& f, int axis) {
    const Boundary b = f.grid().boundary();
    return apply_along_axis(f, axis, [b](int n, double h, auto get, auto set) {
        const double inv2h = 1.0 / (2.0 * h);
        if (b == Boundary::periodic) {
            for (int i = 0; i < n; ++i) {
                const int im = (i == 0) ? n - 1 : i - 1;
                const int ip = (i == n - 1) ? 0 : i + 1;
                set(i, (get(ip) - get(im)) * inv2h);
            }
        } else {
            set(0, (-3.0 * get(0) + 4.0 * get(1) - get(2)) * inv2h);
            for (int i = 1; i < n - 1; ++i) {
                set(i, (get(i + 1) - get(i - 1)) * inv2h);
            }
            set(n - 1, (3.0 * get(n - 1) - 4.0 * get(n - 2) + get(n - 3)) * inv2h);
        }
    });
}

ScalarField second_derivative(const ScalarField& f, int axis) {
    const Boundary b = f.grid().boundary();
    return apply_along_axis(f, axis, [b](int n, double h, auto get, auto set) {
        const double invh2 = 1.0 / (h * h);
        if (b == Boundary::periodic) {
            for (int i = 0; i < n; ++i) {
                const int im = (i == 0) ? n - 1 : i - 1;
                const int ip = (i == n - 1) ? 0 : i + 1;
                set(i, (get(ip) - 2.0 * get(i) + get(im)) * invh2);
            }
        } else {
            set(0, (2.0 * get(0) - 5.0 * get(1) + 4.0 * get(2) - get(3)) * invh2);
            for (int i = 1; i < n - 1; ++i) {
                set(i, (get(i + 1) - 2.0 * get(i) + get(i - 1)) * invh2);
            }
            set(n - 1,
                (2.0 * get(n - 1) - 5.0 * get(n - 2) + 4.0 * get(n - 3) - get(n - 4)) * invh2);
        }
    });
}

ScalarField laplacian(const ScalarField& f) {
    ScalarField out = second_derivative(f, 0);
    if (f.grid().dim() == 2) out += second_derivative(f, 1);
    return out;
}

double integrate(const ScalarField& f) {
    const Grid& g = f.grid();
    double sum = 0.0;
    if (g.boundary() == Boundary::periodic) {
        for (std::size_t i = 0; i < f.size(); ++i) sum += f[i];
        return sum * g.cell_volume();
    }
    for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * g.quadrature_weight(i);
    return sum;
}

double integrate_compensated(const ScalarField& f) {
    const Grid& g = f.grid();
    double sum = 0.0;
    double carry = 0.0;
    const bool periodic = g.boundary() == Boundary::periodic;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double term = periodic ? f[i] : f[i] * g.quadrature_weight(i);
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return periodic ? sum * g.cell_volume() : sum;
}

DensityField normalize(const ScalarField& rho) {
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (rho[i] < 0.0) throw std::domain_error("normalize: negative density value");
    }
    const double total = integrate(rho);
    if (!(total > 0.0)) throw std::domain_error("normalize: field integrates to zero");
    ScalarField scaled = rho;
    scaled *= 1.0 / total;
    return DensityField(std::move(scaled));
}

double density_mean(const DensityField& rho, int axis) {
    const Grid& g = rho.grid();
    double m = 0.0;
    if (g.dim() == 1) {
        for (int i = 0; i < g.extent(0); ++i) {
            m += g.coord(0, i) * rho[g.index(i)] * g.quadrature_weight(g.index(i));
        }
        return m;
    }
    for (int i = 0; i < g.extent(0); ++i) {
        for (int j = 0; j < g.extent(1); ++j) {
            const std::size_t k = g.index(i, j);
            m += g.coord(axis, axis == 0 ? i : j) * rho[k] * g.quadrature_weight(k);
        }
    }
    return m;
}

double density_variance(const DensityField& rho, int axis) {
    const Grid& g = rho.grid();
    const double mean = density_mean(rho, axis);
    double v = 0.0;
    if (g.dim() == 1) {
        for (int i = 0; i < g.extent(0); ++i) {
            const double d = g.coord(0, i) - mean;
            v += d * d * rho[g.index(i)] * g.quadrature_weight(g.index(i));
        }
        return v;
    }
    for (int i = 0; i < g.extent(0); ++i) {
        for (int j = 0; j < g.extent(1); ++j) {
            const std::size_t k = g.index(i, j);
            const double d = g.coord(axis, axis == 0 ? i : j) - mean;
            v += d * d * rho[k] * g.quadrature_weight(k);
        }
    }
    return v;
}

double l1_distance(const ScalarField& a, const ScalarField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("l1_distance: grid mismatch");
    const Grid& g = a.grid();
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::abs(a[i] - b[i]) * g.quadrature_weight(i);
    }
    return sum;
}

double linf_distance(const ScalarField& a, const ScalarField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("linf_distance: grid mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace entropic
