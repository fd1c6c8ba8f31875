#include "entropic/transition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "entropic/errors.hpp"
#include "entropic/operators.hpp"

namespace entropic {

namespace {

void check_position_arity(std::span<const double> x, const Grid& grid) {
    if (static_cast<int>(x.size()) != grid.dim()) {
        throw std::invalid_argument("position arity does not match kernel grid dimension");
    }
}

// Unnormalized log kernel S(x') - 1/2 sum_A alpha_A (x'_A - x_A)^2 sampled
// over the grid. Displacements respect periodic wrap.
ScalarField log_kernel(std::span<const double> x, const DriftPotential& dp,
                       std::span<const double> alphas, const Grid& grid) {
    ScalarField out(grid);
    if (grid.dim() == 1) {
        for (int i = 0; i < grid.extent(0); ++i) {
            const double xp = grid.coord(0, i);
            const double d = grid.displacement(0, xp, x[0]);
            out.at(i) = dp.value(std::span<const double>(&xp, 1)) - 0.5 * alphas[0] * d * d;
        }
    } else {
        for (int i = 0; i < grid.extent(0); ++i) {
            for (int j = 0; j < grid.extent(1); ++j) {
                const std::array<double, 2> xp{grid.coord(0, i), grid.coord(1, j)};
                const double d0 = grid.displacement(0, xp[0], x[0]);
                const double d1 = grid.displacement(1, xp[1], x[1]);
                out.at(i, j) = dp.value(std::span<const double>(xp.data(), 2)) -
                               0.5 * (alphas[0] * d0 * d0 + alphas[1] * d1 * d1);
            }
        }
    }
    return out;
}

// exp(logp - max), normalized to unit quadrature integral.
DensityField normalize_log_density(const ScalarField& logp) {
    double peak = logp[0];
    for (std::size_t i = 1; i < logp.size(); ++i) peak = std::max(peak, logp[i]);
    ScalarField p(logp.grid());
    for (std::size_t i = 0; i < logp.size(); ++i) p[i] = std::exp(logp[i] - peak);
    return normalize(p);
}

// Fraction of kernel mass sitting in the outermost cell layer; a proxy for
// the mass the domain truncates.
double boundary_mass(const DensityField& p) {
    const Grid& g = p.grid();
    double edge = 0.0;
    if (g.dim() == 1) {
        const int n = g.extent(0);
        edge = p[g.index(0)] * g.quadrature_weight(g.index(0)) +
               p[g.index(n - 1)] * g.quadrature_weight(g.index(n - 1));
        return edge;
    }
    const int n0 = g.extent(0), n1 = g.extent(1);
    for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) {
            if (i == 0 || i == n0 - 1 || j == 0 || j == n1 - 1) {
                const std::size_t k = g.index(i, j);
                edge += p[k] * g.quadrature_weight(k);
            }
        }
    }
    return edge;
}

void check_support(const DensityField& p, const char* op) {
    constexpr double kTailThreshold = 1e-10;
    const double edge = boundary_mass(p);
    if (edge > kTailThreshold) {
        throw PrecisionError(std::string(op) + ": kernel support truncated, boundary mass " +
                             std::to_string(edge));
    }
}

} // namespace

DensityField transition_density(std::span<const double> x, const DriftPotential& dp,
                                double alpha, const Grid& grid) {
    check_position_arity(x, grid);
    if (!(alpha > 0.0)) throw std::invalid_argument("transition_density: alpha must be positive");
    std::vector<double> alphas(static_cast<std::size_t>(grid.dim()), alpha);
    DensityField p = normalize_log_density(log_kernel(x, dp, alphas, grid));
    check_support(p, "transition_density");
    return p;
}

TransitionMoments transition_moments(std::span<const double> x, const DriftPotential& dp,
                                     const ModelParams& params) {
    if (static_cast<int>(x.size()) != params.n_coords()) {
        throw std::invalid_argument("transition_moments: position arity mismatch");
    }
    TransitionMoments m;
    m.mean_shift.resize(x.size());
    m.covariance_diag.resize(x.size());
    for (int a = 0; a < params.n_coords(); ++a) {
        const double alpha = params.alpha_coord(a);
        m.mean_shift[static_cast<std::size_t>(a)] = dp.gradient(x, a) / alpha;
        m.covariance_diag[static_cast<std::size_t>(a)] = 1.0 / alpha;
    }
    return m;
}

double variational_objective(const ScalarField& p, const ScalarField& prior_q,
                             const ScalarField& entropy_s) {
    if (p.grid() != prior_q.grid() || p.grid() != entropy_s.grid()) {
        throw std::invalid_argument("variational_objective: grid mismatch");
    }
    const Grid& g = p.grid();
    double obj = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double w = g.quadrature_weight(i);
        const double pi = p[i];
        if (pi <= 0.0) continue; // 0 log 0 = 0
        obj += w * pi * (entropy_s[i] - std::log(pi / std::max(prior_q[i], 1e-300)));
    }
    return obj;
}

double variational_gap(std::span<const double> x, const DriftPotential& dp, double alpha,
                       const Grid& grid) {
    check_position_arity(x, grid);
    const DensityField closed_form = transition_density(x, dp, alpha, grid);

    std::vector<double> alphas(static_cast<std::size_t>(grid.dim()), alpha);
    const ScalarField target = log_kernel(x, dp, alphas, grid); // log(Q e^S) up to a constant

    auto tv_distance = [&](const DensityField& a, const DensityField& b) {
        double tv = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            tv += std::abs(a[i] - b[i]) * grid.quadrature_weight(i);
        }
        return 0.5 * tv;
    };

    constexpr int kMaxIter = 10000;
    constexpr double kDamping = 0.5;
    ScalarField logp(grid); // uniform start
    DensityField current = normalize_log_density(logp);
    for (int iter = 0; iter < kMaxIter; ++iter) {
        double shift = 0.0;
        for (std::size_t i = 0; i < logp.size(); ++i) {
            const double next = (1.0 - kDamping) * logp[i] + kDamping * target[i];
            shift = std::max(shift, std::abs(next - logp[i]));
            logp[i] = next;
        }
        current = normalize_log_density(logp);
        if (shift < 1e-13) {
            return tv_distance(current, closed_form);
        }
    }
    throw ConvergenceError("variational_gap: fixed-point ascent hit iteration cap",
                           tv_distance(current, closed_form));
}

InformationMetric information_metric(const ModelParams& params, const DriftPotential& dp,
                                     std::span<const double> x, const Grid& grid,
                                     double c_scale) {
    check_position_arity(x, grid);
    if (grid.dim() != params.n_coords()) {
        throw std::invalid_argument("information_metric: grid dimension must equal coordinate count");
    }
    const double C = c_scale > 0.0 ? c_scale : params.dt();
    const int nc = params.n_coords();

    std::vector<double> alphas(static_cast<std::size_t>(nc));
    for (int a = 0; a < nc; ++a) alphas[static_cast<std::size_t>(a)] = params.alpha_coord(a);

    auto log_density_at = [&](std::span<const double> xc) {
        const ScalarField lk = log_kernel(xc, dp, alphas, grid);
        const DensityField p = normalize_log_density(lk);
        ScalarField logp(grid);
        for (std::size_t i = 0; i < p.size(); ++i) {
            logp[i] = std::log(std::max(p[i], 1e-300));
        }
        return logp;
    };

    const DensityField center = normalize_log_density(log_kernel(x, dp, alphas, grid));
    check_support(center, "information_metric");

    // d_A log P by central differences in the conditioning point x.
    std::vector<ScalarField> dlog;
    dlog.reserve(static_cast<std::size_t>(nc));
    std::vector<double> xs(x.begin(), x.end());
    for (int a = 0; a < nc; ++a) {
        const double h = 0.5 * grid.spacing(a);
        xs[static_cast<std::size_t>(a)] = x[a] + h;
        ScalarField plus = log_density_at(xs);
        xs[static_cast<std::size_t>(a)] = x[a] - h;
        ScalarField minus = log_density_at(xs);
        xs[static_cast<std::size_t>(a)] = x[a];
        plus -= minus;
        plus *= 1.0 / (2.0 * h);
        dlog.push_back(std::move(plus));
    }

    InformationMetric out;
    out.n_coords = nc;
    out.gamma.assign(static_cast<std::size_t>(nc) * nc, 0.0);
    out.mass.assign(static_cast<std::size_t>(nc) * nc, 0.0);
    for (int a = 0; a < nc; ++a) {
        for (int b = a; b < nc; ++b) {
            double acc = 0.0;
            const ScalarField& da = dlog[static_cast<std::size_t>(a)];
            const ScalarField& db = dlog[static_cast<std::size_t>(b)];
            for (std::size_t i = 0; i < center.size(); ++i) {
                acc += center[i] * da[i] * db[i] * grid.quadrature_weight(i);
            }
            const double gamma_ab = C * acc;
            out.gamma[static_cast<std::size_t>(a) * nc + b] = gamma_ab;
            out.gamma[static_cast<std::size_t>(b) * nc + a] = gamma_ab;
            const double mass_ab = params.eta() * params.dt() / C * gamma_ab;
            out.mass[static_cast<std::size_t>(a) * nc + b] = mass_ab;
            out.mass[static_cast<std::size_t>(b) * nc + a] = mass_ab;
        }
    }
    return out;
}

} // namespace entropic
