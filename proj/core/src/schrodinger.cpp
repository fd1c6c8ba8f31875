#include "entropic/schrodinger.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "entropic/errors.hpp"

namespace entropic {

namespace {

using cplx = std::complex<double>;

std::vector<double> wavenumbers(const Grid& g) {
    const int n = g.extent(0);
    const double dk = 2.0 * std::numbers::pi / g.length(0);
    std::vector<double> k(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const int m = j <= n / 2 ? j : j - n;
        k[static_cast<std::size_t>(j)] = dk * static_cast<double>(m);
    }
    return k;
}

struct StrangStage {
    std::vector<cplx> half_kick; // exp(-i V dt_s / (2 hbar))
    std::vector<cplx> drift;     // exp(-i hbar k^2 dt_s / (2 m))
};

} // namespace

struct SchrodingerStepper::Impl {
    Grid grid;
    double dt = 0.0;
    double hbar = 0.0;
    bool spectral = false;

    // spectral path
    std::unique_ptr<FftPlan> plan;
    std::vector<StrangStage> stages;

    // Crank-Nicolson path: tridiagonal (I + i dt H / 2 hbar), lower/diag/upper
    std::vector<cplx> cn_diag;
    std::vector<cplx> cn_off_lo; // sub-diagonal of the implicit matrix
    std::vector<cplx> cn_off_up;
    std::vector<cplx> rhs_diag;  // explicit side (I - i dt H / 2 hbar)
    std::vector<cplx> rhs_off_lo;
    std::vector<cplx> rhs_off_up;

    void build_spectral(const Potential& V, const ModelParams& params, SplitScheme scheme);
    void build_crank_nicolson(const Potential& V, const ModelParams& params);
    WaveField advance(const WaveField& psi) const;
};

void SchrodingerStepper::Impl::build_spectral(const Potential& V, const ModelParams& params,
                                              SplitScheme scheme) {
    const int n = grid.extent(0);
    plan = std::make_unique<FftPlan>(static_cast<std::size_t>(n));
    const auto k = wavenumbers(grid);
    const double mass = params.mass(0);

    std::vector<double> substeps;
    if (scheme == SplitScheme::strang) {
        substeps = {dt};
    } else {
        // Triple-jump composition: w1, w0, w1 with w1 = 1/(2 - 2^(1/3)).
        const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
        const double w0 = 1.0 - 2.0 * w1;
        substeps = {w1 * dt, w0 * dt, w1 * dt};
    }

    stages.clear();
    for (double ds : substeps) {
        StrangStage st;
        st.half_kick.resize(static_cast<std::size_t>(n));
        st.drift.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double v = V.value(grid.coord(0, i));
            st.half_kick[static_cast<std::size_t>(i)] =
                std::polar(1.0, -v * ds / (2.0 * hbar));
        }
        for (int j = 0; j < n; ++j) {
            const double kj = k[static_cast<std::size_t>(j)];
            st.drift[static_cast<std::size_t>(j)] =
                std::polar(1.0, -hbar * kj * kj * ds / (2.0 * mass));
        }
        stages.push_back(std::move(st));
    }
}

void SchrodingerStepper::Impl::build_crank_nicolson(const Potential& V,
                                                    const ModelParams& params) {
    const int n = grid.extent(0);
    const double h = grid.spacing(0);
    const double mass = params.mass(0);
    const double kin = -hbar * hbar / (2.0 * mass * h * h); // off-diagonal of H
    const cplx lambda = cplx(0.0, dt / (2.0 * hbar));

    cn_diag.resize(static_cast<std::size_t>(n));
    cn_off_lo.assign(static_cast<std::size_t>(n), 0.0);
    cn_off_up.assign(static_cast<std::size_t>(n), 0.0);
    rhs_diag.resize(static_cast<std::size_t>(n));
    rhs_off_lo.assign(static_cast<std::size_t>(n), 0.0);
    rhs_off_up.assign(static_cast<std::size_t>(n), 0.0);

    for (int i = 0; i < n; ++i) {
        const double v = V.value(grid.coord(0, i));
        const double h_diag = -2.0 * kin + v;
        // Mirrored walls: the single neighbour enters twice, keeping H
        // self-adjoint under the trapezoid weights.
        const double up = (i == 0) ? 2.0 * kin : kin;
        const double lo = (i == n - 1) ? 2.0 * kin : kin;
        cn_diag[static_cast<std::size_t>(i)] = 1.0 + lambda * h_diag;
        rhs_diag[static_cast<std::size_t>(i)] = 1.0 - lambda * h_diag;
        if (i + 1 < n) {
            cn_off_up[static_cast<std::size_t>(i)] = lambda * up;
            rhs_off_up[static_cast<std::size_t>(i)] = -lambda * up;
        }
        if (i > 0) {
            cn_off_lo[static_cast<std::size_t>(i)] = lambda * lo;
            rhs_off_lo[static_cast<std::size_t>(i)] = -lambda * lo;
        }
    }
}

WaveField SchrodingerStepper::Impl::advance(const WaveField& psi) const {
    const std::size_t n = grid.size();
    WaveField out{grid, psi.values, psi.time + dt};
    if (spectral) {
        for (const StrangStage& st : stages) {
            for (std::size_t i = 0; i < n; ++i) out.values[i] *= st.half_kick[i];
            plan->forward(out.values);
            for (std::size_t i = 0; i < n; ++i) out.values[i] *= st.drift[i];
            plan->inverse(out.values);
            for (std::size_t i = 0; i < n; ++i) out.values[i] *= st.half_kick[i];
        }
    } else {
        // rhs = (I - i dt H / 2 hbar) psi
        std::vector<cplx> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc = rhs_diag[i] * out.values[i];
            if (i > 0) acc += rhs_off_lo[i] * out.values[i - 1];
            if (i + 1 < n) acc += rhs_off_up[i] * out.values[i + 1];
            rhs[i] = acc;
        }
        // Thomas solve of the implicit tridiagonal system.
        std::vector<cplx> c_prime(n);
        std::vector<cplx> d_prime(n);
        c_prime[0] = cn_off_up[0] / cn_diag[0];
        d_prime[0] = rhs[0] / cn_diag[0];
        for (std::size_t i = 1; i < n; ++i) {
            const cplx denom = cn_diag[i] - cn_off_lo[i] * c_prime[i - 1];
            c_prime[i] = (i + 1 < n) ? cn_off_up[i] / denom : cplx(0.0);
            d_prime[i] = (rhs[i] - cn_off_lo[i] * d_prime[i - 1]) / denom;
        }
        out.values[n - 1] = d_prime[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) {
            out.values[i] = d_prime[i] - c_prime[i] * out.values[i + 1];
        }
    }
    for (const cplx& v : out.values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw NumericalError("schrodinger step produced non-finite values at t = " +
                                 std::to_string(out.time));
        }
    }
    return out;
}

SchrodingerStepper::SchrodingerStepper(const Grid& grid, const Potential& V,
                                       const ModelParams& params, double dt_solver,
                                       SplitScheme scheme)
    : impl_(std::make_unique<Impl>()) {
    if (grid.dim() != 1) throw std::invalid_argument("SchrodingerStepper supports 1D grids");
    if (!(dt_solver > 0.0)) throw std::invalid_argument("dt_solver must be positive");
    impl_->grid = grid;
    impl_->dt = dt_solver;
    impl_->hbar = params.hbar(); // throws for xi <= 0
    impl_->spectral = grid.boundary() == Boundary::periodic;
    if (impl_->spectral) {
        impl_->build_spectral(V, params, scheme);
    } else {
        impl_->build_crank_nicolson(V, params);
    }
}

SchrodingerStepper::~SchrodingerStepper() = default;
SchrodingerStepper::SchrodingerStepper(SchrodingerStepper&&) noexcept = default;
SchrodingerStepper& SchrodingerStepper::operator=(SchrodingerStepper&&) noexcept = default;

double SchrodingerStepper::dt() const { return impl_->dt; }

WaveField SchrodingerStepper::step(const WaveField& psi) const {
    if (psi.grid != impl_->grid) throw std::invalid_argument("stepper grid mismatch");
    return impl_->advance(psi);
}

WaveField step_schrodinger(const WaveField& psi, const Potential& V, const ModelParams& params,
                           double dt_solver, SplitScheme scheme) {
    return SchrodingerStepper(psi.grid, V, params, dt_solver, scheme).step(psi);
}

double wave_energy(const WaveField& psi, const Potential& V, const ModelParams& params) {
    const Grid& g = psi.grid;
    if (g.dim() != 1) throw std::invalid_argument("wave_energy supports 1D grids");
    const double hbar = params.hbar();
    const double mass = params.mass(0);
    const std::size_t n = g.size();

    double kinetic = 0.0;
    if (g.boundary() == Boundary::periodic) {
        FftPlan plan(n);
        std::vector<cplx> hat = psi.values;
        plan.forward(hat);
        const auto k = wavenumbers(g);
        // Parseval with the forward-unnormalized transform: sum_i h |psi|^2
        // corresponds to (h / n) sum_j |hat|^2 / n ... folded into one factor.
        const double w = g.cell_volume() / static_cast<double>(n * n);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += hbar * hbar * k[j] * k[j] / (2.0 * mass) * std::norm(hat[j]) * w;
        }
        kinetic = acc;
    } else {
        // <psi|T|psi> with the mirrored 3-point stencil, trapezoid weights.
        const double h = g.spacing(0);
        const double kin = -hbar * hbar / (2.0 * mass * h * h);
        const int len = static_cast<int>(n);
        double acc = 0.0;
        for (int i = 0; i < len; ++i) {
            cplx t = -2.0 * kin * psi.values[static_cast<std::size_t>(i)] * -1.0;
            t = 0.0;
            cplx row = cplx(-2.0 * kin, 0.0) * psi.values[static_cast<std::size_t>(i)];
            if (i > 0) row += cplx(i == len - 1 ? 2.0 * kin : kin, 0.0) *
                              psi.values[static_cast<std::size_t>(i - 1)];
            if (i + 1 < len) row += cplx(i == 0 ? 2.0 * kin : kin, 0.0) *
                                    psi.values[static_cast<std::size_t>(i + 1)];
            acc += (std::conj(psi.values[static_cast<std::size_t>(i)]) * row).real() *
                   g.quadrature_weight(static_cast<std::size_t>(i));
            (void)t;
        }
        kinetic = acc;
    }

    double potential = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        potential += V.value(g.coord(0, static_cast<int>(i))) * std::norm(psi.values[i]) *
                     g.quadrature_weight(i);
    }
    return kinetic + potential;
}

} // namespace entropic
