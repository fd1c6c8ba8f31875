#include "entropic/field_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "entropic/errors.hpp"
#include "entropic/operators.hpp"

namespace entropic {

namespace {

// Absolute guard inside sqrt/log during integration; keeps deep Gaussian
// tails exact instead of flattening them (flattened tails feed spurious
// Hamilton-Jacobi growth under confining potentials).
constexpr double kAbsGuard = 1e-300;

double rel_floor(const ScalarField& rho) {
    double peak = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) peak = std::max(peak, rho[i]);
    return std::max(kFieldFloorRel * peak, kAbsGuard);
}

ScalarField floored_log(const ScalarField& rho, double floor) {
    ScalarField out(rho.grid());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        out[i] = std::log(std::max(rho[i], floor));
    }
    return out;
}

ScalarField guarded_sqrt(const ScalarField& rho) {
    ScalarField out(rho.grid());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        out[i] = std::sqrt(std::max(rho[i], kAbsGuard));
    }
    return out;
}

// 3-point second derivative whose wall rows mirror the interior point
// (ghost f_{-1} = f_1). This is the variational partner of the discrete
// Dirichlet form, so the coupled step conserves the ensemble Hamiltonian.
template <typename Get, typename Set>
void neumann_lap_line(int n, double h, Boundary b, Get get, Set set) {
    const double invh2 = 1.0 / (h * h);
    if (b == Boundary::periodic) {
        for (int i = 0; i < n; ++i) {
            const int im = (i == 0) ? n - 1 : i - 1;
            const int ip = (i == n - 1) ? 0 : i + 1;
            set(i, (get(ip) - 2.0 * get(i) + get(im)) * invh2);
        }
        return;
    }
    set(0, 2.0 * (get(1) - get(0)) * invh2);
    for (int i = 1; i < n - 1; ++i) {
        set(i, (get(i + 1) - 2.0 * get(i) + get(i - 1)) * invh2);
    }
    set(n - 1, 2.0 * (get(n - 2) - get(n - 1)) * invh2);
}

ScalarField neumann_laplacian(const ScalarField& f, int axis) {
    const Grid& g = f.grid();
    ScalarField out(g);
    if (g.dim() == 1) {
        neumann_lap_line(
            g.extent(0), g.spacing(0), g.boundary(), [&](int i) { return f.at(i); },
            [&](int i, double v) { out.at(i) = v; });
        return out;
    }
    if (axis == 0) {
        for (int j = 0; j < g.extent(1); ++j) {
            neumann_lap_line(
                g.extent(0), g.spacing(0), g.boundary(), [&](int i) { return f.at(i, j); },
                [&](int i, double v) { out.at(i, j) = v; });
        }
    } else {
        for (int i = 0; i < g.extent(0); ++i) {
            neumann_lap_line(
                g.extent(1), g.spacing(1), g.boundary(), [&](int j) { return f.at(i, j); },
                [&](int j, double v) { out.at(i, j) = v; });
        }
    }
    return out;
}

// Axis quadrature weight relative to the spacing: 1 everywhere on periodic
// axes, 1/2 at reflecting endpoints.
double axis_weight_ratio(const Grid& g, int axis, int i) {
    if (g.boundary() == Boundary::periodic) return 1.0;
    return (i == 0 || i == g.extent(axis) - 1) ? 0.5 : 1.0;
}

// Adjoint of the gradient stencil against the quadrature weights:
//   G_j = (1/w_j) sum_i w_i F_i D_{ij}.
// On periodic grids this is exactly -centralD(F); on reflecting grids the
// wall rows pick up the one-sided stencil transposes. Row sums of D vanish,
// so sum_j w_j G_j = 0 identically: mass is conserved to rounding.
template <typename Get, typename Set>
void adjoint_gradient_line(int n, double h, Boundary b, Get get_wf, Set add) {
    const double inv2h = 1.0 / (2.0 * h);
    if (b == Boundary::periodic) {
        for (int i = 0; i < n; ++i) {
            const int im = (i == 0) ? n - 1 : i - 1;
            const int ip = (i == n - 1) ? 0 : i + 1;
            const double c = get_wf(i) * inv2h;
            add(ip, c);
            add(im, -c);
        }
        return;
    }
    {
        const double c = get_wf(0) * inv2h;
        add(0, -3.0 * c);
        add(1, 4.0 * c);
        add(2, -c);
    }
    for (int i = 1; i < n - 1; ++i) {
        const double c = get_wf(i) * inv2h;
        add(i + 1, c);
        add(i - 1, -c);
    }
    {
        const double c = get_wf(n - 1) * inv2h;
        add(n - 1, 3.0 * c);
        add(n - 2, -4.0 * c);
        add(n - 3, c);
    }
}

// d_t rho from the kinetic part of the Hamiltonian: scatter of the flux
// F_A = rho (D_A Phi) / m_A through the adjoint gradient.
ScalarField rho_rate(const ScalarField& rho, const ScalarField& phi,
                     const ModelParams& params) {
    const Grid& g = rho.grid();
    ScalarField out(g);
    for (int axis = 0; axis < g.dim(); ++axis) {
        const double inv_mass = params.inv_mass_coord(axis);
        const ScalarField dphi = gradient(phi, axis);
        if (g.dim() == 1) {
            const int n = g.extent(0);
            adjoint_gradient_line(
                n, g.spacing(0), g.boundary(),
                [&](int i) {
                    return axis_weight_ratio(g, 0, i) * rho.at(i) * dphi.at(i) * inv_mass;
                },
                [&](int j, double c) { out.at(j) += c / axis_weight_ratio(g, 0, j); });
        } else if (axis == 0) {
            for (int j = 0; j < g.extent(1); ++j) {
                adjoint_gradient_line(
                    g.extent(0), g.spacing(0), g.boundary(),
                    [&](int i) {
                        return axis_weight_ratio(g, 0, i) * rho.at(i, j) * dphi.at(i, j) *
                               inv_mass;
                    },
                    [&](int i, double c) { out.at(i, j) += c / axis_weight_ratio(g, 0, i); });
            }
        } else {
            for (int i = 0; i < g.extent(0); ++i) {
                adjoint_gradient_line(
                    g.extent(1), g.spacing(1), g.boundary(),
                    [&](int j) {
                        return axis_weight_ratio(g, 1, j) * rho.at(i, j) * dphi.at(i, j) *
                               inv_mass;
                    },
                    [&](int j, double c) { out.at(i, j) += c / axis_weight_ratio(g, 1, j); });
            }
        }
    }
    return out;
}

// d_t Phi = -1/2 m^AB dPhi dPhi - V + 4 xi m^AB (L sqrt rho)/sqrt rho.
ScalarField phi_rate(const ScalarField& rho, const ScalarField& phi, const ModelParams& params,
                     const ScalarField& v_samples) {
    const Grid& g = rho.grid();
    ScalarField out(g);
    for (int axis = 0; axis < g.dim(); ++axis) {
        const double inv_mass = params.inv_mass_coord(axis);
        const ScalarField dphi = gradient(phi, axis);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] -= 0.5 * inv_mass * dphi[i] * dphi[i];
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= v_samples[i];

    if (params.xi() > 0.0) {
        const ScalarField root = guarded_sqrt(rho);
        for (int axis = 0; axis < g.dim(); ++axis) {
            const double scale = 4.0 * params.xi() * params.inv_mass_coord(axis);
            const ScalarField lap = neumann_laplacian(root, axis);
            for (std::size_t i = 0; i < out.size(); ++i) {
                out[i] += scale * lap[i] / root[i];
            }
        }
    }
    return out;
}

} // namespace

ScalarField current_velocity(const FieldState& s, const ModelParams& params, int axis) {
    ScalarField v = gradient(s.phi, axis);
    v *= params.inv_mass_coord(axis);
    return v;
}

ScalarField osmotic_velocity(const DensityField& rho, const ModelParams& params, int axis) {
    const double floor = rel_floor(rho.field());
    ScalarField u = gradient(floored_log(rho.field(), floor), axis);
    u *= -0.5 * params.eta() * params.inv_mass_coord(axis);
    return u;
}

double fick_residual(const DensityField& rho, const ModelParams& params, int axis) {
    const ScalarField u = osmotic_velocity(rho, params, axis);
    const ScalarField drho = gradient(rho.field(), axis);
    const double diffusion = params.diffusion_coord(axis);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        worst = std::max(worst, std::abs(rho[i] * u[i] + diffusion * drho[i]));
    }
    return worst;
}

ScalarField phi_from_drift_entropy(const ScalarField& entropy_s, const DensityField& rho,
                                   double eta) {
    const double floor = rel_floor(rho.field());
    ScalarField phi = floored_log(rho.field(), floor);
    phi *= -0.5;
    phi += entropy_s;
    phi *= eta;
    return phi;
}

VelocityDecomposition decompose_velocity(const FieldState& s, const ModelParams& params,
                                         const DriftPotential& drift, int axis, double tol) {
    const ScalarField v = current_velocity(s, params, axis);
    ScalarField b = gradient(drift.sample(s.rho.grid()), axis);
    b *= params.eta() * params.inv_mass_coord(axis);
    const ScalarField u = osmotic_velocity(s.rho, params, axis);
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        worst = std::max(worst, std::abs(v[i] - b[i] - u[i]));
    }
    if (worst > tol) {
        throw NumericalError("velocity decomposition identity violated: max |v - b - u| = " +
                             std::to_string(worst));
    }
    return {v, b, u};
}

ScalarField drift_entropy_from_state(const FieldState& s, const ModelParams& params) {
    const double floor = rel_floor(s.rho.field());
    ScalarField out = floored_log(s.rho.field(), floor);
    out *= 0.5;
    ScalarField phi_part = s.phi;
    phi_part *= 1.0 / params.eta();
    out += phi_part;
    return out;
}

FisherResult fisher_functional(const DensityField& rho, const ModelParams& params) {
    const Grid& g = rho.grid();
    const int nc = g.dim();
    const double floor = rel_floor(rho.field());
    const ScalarField logrho = floored_log(rho.field(), floor);

    std::vector<ScalarField> dlog;
    dlog.reserve(static_cast<std::size_t>(nc));
    for (int a = 0; a < nc; ++a) dlog.push_back(gradient(logrho, a));

    FisherResult out;
    out.n_coords = nc;
    out.matrix.assign(static_cast<std::size_t>(nc) * nc, 0.0);
    for (int a = 0; a < nc; ++a) {
        for (int b = a; b < nc; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < rho.size(); ++i) {
                acc += rho[i] * dlog[static_cast<std::size_t>(a)][i] *
                       dlog[static_cast<std::size_t>(b)][i] * g.quadrature_weight(i);
            }
            out.matrix[static_cast<std::size_t>(a) * nc + b] = acc;
            out.matrix[static_cast<std::size_t>(b) * nc + a] = acc;
        }
    }
    out.contracted = 0.0;
    for (int a = 0; a < nc; ++a) {
        out.contracted += params.inv_mass_coord(a) * out.at(a, a);
    }
    return out;
}

ScalarField quantum_potential(const DensityField& rho, const ModelParams& params) {
    const Grid& g = rho.grid();
    const ScalarField root = guarded_sqrt(rho.field());
    ScalarField q(g);
    for (int axis = 0; axis < g.dim(); ++axis) {
        const double scale = -4.0 * params.xi() * params.inv_mass_coord(axis);
        const ScalarField lap = neumann_laplacian(root, axis);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] += scale * lap[i] / root[i];
    }
    return q;
}

namespace {

// Discrete Dirichlet form 4 sum_A (1/m_A) sum_edges w ((f_{i+1}-f_i)/h)^2;
// the Fisher energy whose rho-derivative is the mirrored 3-point quantum
// potential above.
double dirichlet_fisher(const ScalarField& root, const ModelParams& params) {
    const Grid& g = root.grid();
    double total = 0.0;
    for (int axis = 0; axis < g.dim(); ++axis) {
        const double h = g.spacing(axis);
        const double inv_mass = params.inv_mass_coord(axis);
        double axis_acc = 0.0;
        auto line_energy = [&](auto get, int n) {
            double acc = 0.0;
            const int edges = g.boundary() == Boundary::periodic ? n : n - 1;
            for (int e = 0; e < edges; ++e) {
                const double d = (get((e + 1) % n) - get(e)) / h;
                acc += d * d * h;
            }
            return acc;
        };
        if (g.dim() == 1) {
            axis_acc = line_energy([&](int i) { return root.at(i); }, g.extent(0));
        } else if (axis == 0) {
            for (int j = 0; j < g.extent(1); ++j) {
                const double wj = axis_weight_ratio(g, 1, j) * g.spacing(1);
                axis_acc += wj * line_energy([&](int i) { return root.at(i, j); }, g.extent(0));
            }
        } else {
            for (int i = 0; i < g.extent(0); ++i) {
                const double wi = axis_weight_ratio(g, 0, i) * g.spacing(0);
                axis_acc += wi * line_energy([&](int j) { return root.at(i, j); }, g.extent(1));
            }
        }
        total += 4.0 * inv_mass * axis_acc;
    }
    return total;
}

} // namespace

double ensemble_hamiltonian(const FieldState& s, const ModelParams& params,
                            const Potential& V) {
    const Grid& g = s.rho.grid();

    ScalarField kinetic_density(g);
    for (int axis = 0; axis < g.dim(); ++axis) {
        const double inv_mass = params.inv_mass_coord(axis);
        const ScalarField dphi = gradient(s.phi, axis);
        for (std::size_t i = 0; i < kinetic_density.size(); ++i) {
            kinetic_density[i] += 0.5 * inv_mass * s.rho[i] * dphi[i] * dphi[i];
        }
    }
    const double kinetic = integrate_compensated(kinetic_density);

    double fisher = 0.0;
    if (params.xi() > 0.0) {
        fisher = params.xi() * dirichlet_fisher(guarded_sqrt(s.rho.field()), params);
    }

    ScalarField pot_density = V.sample(g);
    for (std::size_t i = 0; i < pot_density.size(); ++i) pot_density[i] *= s.rho[i];
    const double potential = integrate_compensated(pot_density);

    return kinetic + fisher + potential;
}

double coupled_stability_bound(const ModelParams& params, const Grid& grid) {
    if (!(params.xi() > 0.0)) return std::numeric_limits<double>::infinity();
    double bound = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < grid.dim(); ++axis) {
        const double h = grid.spacing(axis);
        bound = std::min(bound, 0.2 * params.mass_coord(axis) * h * h / params.hbar());
    }
    return bound;
}

FieldState step_coupled(const FieldState& s, const ModelParams& params, const Potential& V,
                        double dt_solver) {
    const Grid& g = s.rho.grid();
    if (!(dt_solver > 0.0)) throw std::invalid_argument("step_coupled: dt_solver must be positive");
    const double bound = coupled_stability_bound(params, g);
    if (dt_solver > bound) {
        throw std::invalid_argument("step_coupled: dt_solver " + std::to_string(dt_solver) +
                                    " exceeds stability bound " + std::to_string(bound));
    }

    const ScalarField v_samples = V.sample(g);
    auto rate = [&](const ScalarField& rho, const ScalarField& phi) {
        return std::pair<ScalarField, ScalarField>(rho_rate(rho, phi, params),
                                                   phi_rate(rho, phi, params, v_samples));
    };

    const ScalarField& rho0 = s.rho.field();
    const ScalarField& phi0 = s.phi;

    auto shifted = [&](const ScalarField& base, const ScalarField& k, double c) {
        ScalarField out = base;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * k[i];
        return out;
    };

    const auto [kr1, kp1] = rate(rho0, phi0);
    const auto [kr2, kp2] =
        rate(shifted(rho0, kr1, 0.5 * dt_solver), shifted(phi0, kp1, 0.5 * dt_solver));
    const auto [kr3, kp3] =
        rate(shifted(rho0, kr2, 0.5 * dt_solver), shifted(phi0, kp2, 0.5 * dt_solver));
    const auto [kr4, kp4] = rate(shifted(rho0, kr3, dt_solver), shifted(phi0, kp3, dt_solver));

    ScalarField rho_next(g);
    ScalarField phi_next(g);
    const double w = dt_solver / 6.0;
    for (std::size_t i = 0; i < rho_next.size(); ++i) {
        rho_next[i] = rho0[i] + w * (kr1[i] + 2.0 * kr2[i] + 2.0 * kr3[i] + kr4[i]);
        phi_next[i] = phi0[i] + w * (kp1[i] + 2.0 * kp2[i] + 2.0 * kp3[i] + kp4[i]);
    }

    for (std::size_t i = 0; i < rho_next.size(); ++i) {
        if (!std::isfinite(rho_next[i]) || !std::isfinite(phi_next[i])) {
            throw NumericalError("step_coupled: non-finite field value at t = " +
                                 std::to_string(s.time + dt_solver));
        }
        if (rho_next[i] < 0.0) rho_next[i] = 0.0;
    }

    const double mass = integrate(rho_next);
    if (std::abs(mass - 1.0) > 1e-6) {
        throw NumericalError("step_coupled: normalization drifted to " + std::to_string(mass));
    }
    return FieldState(normalize(rho_next), std::move(phi_next), s.time + dt_solver);
}

double energy_drift(std::span<const FieldState> trajectory, const ModelParams& params,
                    const Potential& V) {
    if (trajectory.size() < 2) {
        throw std::invalid_argument("energy_drift needs at least two states");
    }
    const double h0 = ensemble_hamiltonian(trajectory[0], params, V);
    double worst = 0.0;
    for (std::size_t k = 1; k < trajectory.size(); ++k) {
        const double hk = ensemble_hamiltonian(trajectory[k], params, V);
        worst = std::max(worst, std::abs(hk - h0));
    }
    return worst / std::max(std::abs(h0), 1e-12);
}

} // namespace entropic
