#include "entropic/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

#include "entropic/errors.hpp"
#include "entropic/operators.hpp"
#include "entropic/rng.hpp"

namespace entropic {

namespace {

// Step index reserved for drawing initial positions.
constexpr std::uint64_t kInitStream = 0xED00000000000001ull;

void parallel_chunks(std::size_t count, int n_threads,
                     const std::function<void(std::size_t, std::size_t)>& body) {
    if (n_threads <= 1 || count < 2) {
        body(0, count);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(n_threads), count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, &errors, t, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

int fold_axis_for_coord(const Grid& domain, int coord, int n_coords) {
    if (domain.dim() == n_coords) return coord;
    if (domain.dim() == 1) return 0; // shared 1D domain per coordinate
    throw std::invalid_argument("ensemble domain grid incompatible with coordinate count");
}

} // namespace

Ensemble::Ensemble(std::size_t n_walkers, int n_coords, std::uint64_t seed)
    : n_walkers_(n_walkers), n_coords_(n_coords), seed_(seed),
      positions_(n_walkers * static_cast<std::size_t>(n_coords), 0.0) {
    if (n_walkers_ == 0) throw std::invalid_argument("ensemble needs at least one walker");
    if (n_coords_ < 1 || n_coords_ > 4) {
        throw std::invalid_argument("ensemble supports 1 to 4 coordinates");
    }
}

Ensemble Ensemble::sample_from(const DensityField& rho, std::size_t n_walkers,
                               std::uint64_t seed) {
    const Grid& g = rho.grid();
    Ensemble e(n_walkers, g.dim(), seed);

    // Cumulative cell masses for inverse-CDF sampling.
    std::vector<double> cdf(rho.size());
    double total = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        total += rho[i] * g.quadrature_weight(i);
        cdf[i] = total;
    }
    for (double& c : cdf) c /= total;

    for (std::size_t w = 0; w < n_walkers; ++w) {
        const double u = rng::uniform(seed, w, kInitStream, 0);
        const std::size_t cell = static_cast<std::size_t>(
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        if (g.dim() == 1) {
            const double jitter = rng::uniform(seed, w, kInitStream, 1) - 0.5;
            const double x = g.coord(0, static_cast<int>(cell)) + jitter * g.spacing(0);
            e.positions_[w] = g.fold(0, x);
        } else {
            const int i = static_cast<int>(cell) / g.extent(1);
            const int j = static_cast<int>(cell) % g.extent(1);
            const double j0 = rng::uniform(seed, w, kInitStream, 1) - 0.5;
            const double j1 = rng::uniform(seed, w, kInitStream, 2) - 0.5;
            e.positions_[2 * w] = g.fold(0, g.coord(0, i) + j0 * g.spacing(0));
            e.positions_[2 * w + 1] = g.fold(1, g.coord(1, j) + j1 * g.spacing(1));
        }
    }
    return e;
}

void Ensemble::set_all(std::span<const double> x) {
    if (static_cast<int>(x.size()) != n_coords_) {
        throw std::invalid_argument("set_all: coordinate count mismatch");
    }
    for (std::size_t w = 0; w < n_walkers_; ++w) {
        for (int a = 0; a < n_coords_; ++a) {
            positions_[w * static_cast<std::size_t>(n_coords_) + static_cast<std::size_t>(a)] =
                x[static_cast<std::size_t>(a)];
        }
    }
}

Ensemble step(const Ensemble& e, const ModelParams& params, const DriftPotential& dp,
              const Grid& domain, int n_threads) {
    const int nc = e.n_coords();
    if (params.n_coords() != nc) {
        throw std::invalid_argument("ensemble step: params coordinate count mismatch");
    }
    Ensemble out = e;
    const double dt = params.dt();
    const std::uint64_t step_index = e.step_count();

    std::vector<double> sigma(static_cast<std::size_t>(nc));
    std::vector<double> drift_scale(static_cast<std::size_t>(nc));
    for (int a = 0; a < nc; ++a) {
        sigma[static_cast<std::size_t>(a)] =
            std::sqrt(params.eta() * dt / params.mass_coord(a));
        drift_scale[static_cast<std::size_t>(a)] = params.eta() * params.inv_mass_coord(a);
    }

    parallel_chunks(e.n_walkers(), n_threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> pos(static_cast<std::size_t>(nc));
        for (std::size_t w = lo; w < hi; ++w) {
            for (int a = 0; a < nc; ++a) {
                pos[static_cast<std::size_t>(a)] = e.position(w, a);
            }
            for (int a = 0; a < nc; ++a) {
                const double grad = dp.gradient(pos, a);
                if (!std::isfinite(grad)) {
                    throw NumericalError("ensemble step: non-finite drift at walker " +
                                         std::to_string(w));
                }
                const double b = drift_scale[static_cast<std::size_t>(a)] * grad;
                const double dw = sigma[static_cast<std::size_t>(a)] *
                                  rng::normal(e.seed(), w, step_index,
                                              static_cast<std::uint64_t>(a));
                const double moved = pos[static_cast<std::size_t>(a)] + b * dt + dw;
                out.positions_[w * static_cast<std::size_t>(nc) + static_cast<std::size_t>(a)] =
                    domain.fold(fold_axis_for_coord(domain, a, nc), moved);
            }
        }
    });

    out.step_count_ = e.step_count_ + 1;
    out.time_ = e.time_ + dt;
    return out;
}

Ensemble propagate(const Ensemble& e, const ModelParams& params, const DriftPotential& dp,
                   const Grid& domain, int n_steps, int n_threads) {
    if (n_steps < 0) throw std::invalid_argument("propagate: n_steps must be nonnegative");
    Ensemble current = e;
    for (int s = 0; s < n_steps; ++s) {
        current = step(current, params, dp, domain, n_threads);
    }
    return current;
}

StepStatistics step_statistics(const Ensemble& before, const Ensemble& after,
                               const ModelParams& params) {
    if (before.n_walkers() != after.n_walkers() || before.n_coords() != after.n_coords()) {
        throw std::invalid_argument("step_statistics: ensemble shape mismatch");
    }
    (void)params;
    const std::size_t w_count = before.n_walkers();
    const int nc = before.n_coords();
    StepStatistics st;
    st.sample_mean.assign(static_cast<std::size_t>(nc), 0.0);
    st.sample_variance.assign(static_cast<std::size_t>(nc), 0.0);
    st.mean_standard_error.assign(static_cast<std::size_t>(nc), 0.0);
    st.variance_standard_error.assign(static_cast<std::size_t>(nc), 0.0);

    for (int a = 0; a < nc; ++a) {
        double mean = 0.0;
        for (std::size_t w = 0; w < w_count; ++w) {
            mean += after.position(w, a) - before.position(w, a);
        }
        mean /= static_cast<double>(w_count);
        double ss = 0.0;
        for (std::size_t w = 0; w < w_count; ++w) {
            const double d = after.position(w, a) - before.position(w, a) - mean;
            ss += d * d;
        }
        const double var = w_count > 1 ? ss / static_cast<double>(w_count - 1) : 0.0;
        st.sample_mean[static_cast<std::size_t>(a)] = mean;
        st.sample_variance[static_cast<std::size_t>(a)] = var;
        st.mean_standard_error[static_cast<std::size_t>(a)] =
            std::sqrt(var / static_cast<double>(w_count));
        st.variance_standard_error[static_cast<std::size_t>(a)] =
            w_count > 1 ? var * std::sqrt(2.0 / static_cast<double>(w_count - 1)) : 0.0;
    }
    return st;
}

DensityField empirical_density(const Ensemble& e, const Grid& grid, double bandwidth,
                               int n_threads) {
    if (e.n_walkers() == 0) throw std::invalid_argument("empirical_density: empty ensemble");
    if (grid.dim() != e.n_coords()) {
        throw std::invalid_argument("empirical_density: grid dimension mismatch");
    }

    const std::size_t w_count = e.n_walkers();
    std::vector<double> bw(static_cast<std::size_t>(grid.dim()));
    for (int ax = 0; ax < grid.dim(); ++ax) {
        double b = bandwidth;
        if (b <= 0.0) {
            double mean = 0.0;
            for (std::size_t w = 0; w < w_count; ++w) mean += e.position(w, ax);
            mean /= static_cast<double>(w_count);
            double ss = 0.0;
            for (std::size_t w = 0; w < w_count; ++w) {
                const double d = e.position(w, ax) - mean;
                ss += d * d;
            }
            const double sd =
                std::sqrt(ss / static_cast<double>(std::max<std::size_t>(w_count - 1, 1)));
            b = 1.06 * sd * std::pow(static_cast<double>(w_count), -0.2);
        }
        if (b < grid.spacing(ax)) {
            if (bandwidth > 0.0) {
                throw std::invalid_argument("empirical_density: bandwidth below grid spacing");
            }
            b = grid.spacing(ax);
        }
        bw[static_cast<std::size_t>(ax)] = b;
    }

    // Evaluation is parallel over grid cells; each cell accumulates walkers in
    // a fixed order, so the result is independent of the thread count.
    ScalarField kde(grid);
    const double cutoff = 8.5; // kernel below 2e-16 past this many bandwidths
    parallel_chunks(grid.size(), n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t cell = lo; cell < hi; ++cell) {
            double xc[2] = {0.0, 0.0};
            if (grid.dim() == 1) {
                xc[0] = grid.coord(0, static_cast<int>(cell));
            } else {
                xc[0] = grid.coord(0, static_cast<int>(cell) / grid.extent(1));
                xc[1] = grid.coord(1, static_cast<int>(cell) % grid.extent(1));
            }
            double acc = 0.0;
            for (std::size_t w = 0; w < w_count; ++w) {
                double arg = 0.0;
                bool skip = false;
                for (int ax = 0; ax < grid.dim(); ++ax) {
                    const double d = grid.displacement(ax, xc[ax], e.position(w, ax));
                    const double z = d / bw[static_cast<std::size_t>(ax)];
                    if (std::abs(z) > cutoff) {
                        skip = true;
                        break;
                    }
                    arg += z * z;
                }
                if (!skip) acc += std::exp(-0.5 * arg);
            }
            kde[cell] = acc;
        }
    });
    return normalize(kde);
}

} // namespace entropic
