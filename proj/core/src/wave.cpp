#include "entropic/wave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "entropic/errors.hpp"
#include "entropic/operators.hpp"

namespace entropic {

namespace {

constexpr double kMaskRel = 1e-6; // |psi|^2 mask relative to its maximum

void require_wave_1d(const WaveField& psi) {
    if (psi.grid.dim() != 1) throw std::invalid_argument("wave fields support 1D grids");
    if (psi.values.size() != psi.grid.size()) {
        throw std::invalid_argument("wave field size does not match grid");
    }
}

} // namespace

double wave_norm(const WaveField& psi) {
    double acc = 0.0;
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
        acc += std::norm(psi.values[i]) * psi.grid.quadrature_weight(i);
    }
    return acc;
}

ScalarField wave_density(const WaveField& psi) {
    ScalarField rho(psi.grid);
    for (std::size_t i = 0; i < psi.values.size(); ++i) rho[i] = std::norm(psi.values[i]);
    return rho;
}

WaveField from_fields(const DensityField& rho, const ScalarField& phi, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("from_fields: k must be positive");
    if (rho.grid() != phi.grid()) throw std::invalid_argument("from_fields: grid mismatch");
    WaveField psi{rho.grid(), std::vector<std::complex<double>>(rho.size()), 0.0};
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double amp = std::sqrt(rho[i]);
        const double phase = phi[i] / k;
        psi.values[i] = std::polar(amp, phase);
    }
    const double norm = wave_norm(psi);
    if (!(norm > 0.0)) throw std::invalid_argument("from_fields: zero-norm state");
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& v : psi.values) v *= scale;
    return psi;
}

WaveFields to_fields(const WaveField& psi, double k) {
    require_wave_1d(psi);
    if (!(k > 0.0)) throw std::invalid_argument("to_fields: k must be positive");
    const int n = static_cast<int>(psi.grid.size());

    ScalarField rho = wave_density(psi);
    double peak = 0.0;
    int seed = 0;
    for (int i = 0; i < n; ++i) {
        if (rho.at(i) > peak) {
            peak = rho.at(i);
            seed = i;
        }
    }
    if (!(peak > 0.0)) throw std::domain_error("to_fields: wave field is identically zero");
    const double mask_level = kMaskRel * peak;

    std::vector<bool> mask(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) mask[static_cast<std::size_t>(i)] = rho.at(i) > mask_level;

    // Accumulate nearest-branch phase increments outward from the seed.
    ScalarField phi(psi.grid);
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    phi.at(seed) = std::arg(psi.values[static_cast<std::size_t>(seed)]) * k;
    visited[static_cast<std::size_t>(seed)] = true;

    auto branch_increment = [&](int from, int to) {
        double d = std::arg(psi.values[static_cast<std::size_t>(to)]) -
                   std::arg(psi.values[static_cast<std::size_t>(from)]);
        while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
        while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
        return d;
    };

    auto walk = [&](int step) {
        int prev = seed;
        for (int i = seed + step; i >= 0 && i < n; i += step) {
            if (!mask[static_cast<std::size_t>(i)]) break; // stop at the mask edge
            phi.at(i) = phi.at(prev) + branch_increment(prev, i) * k;
            visited[static_cast<std::size_t>(i)] = true;
            prev = i;
        }
        // Carry the edge value into the masked-out region.
        const double edge = phi.at(prev);
        for (int i = prev + step; i >= 0 && i < n; i += step) {
            if (!visited[static_cast<std::size_t>(i)]) phi.at(i) = edge;
        }
    };
    walk(+1);
    walk(-1);

    for (int i = 0; i < n; ++i) {
        if (mask[static_cast<std::size_t>(i)] && !visited[static_cast<std::size_t>(i)]) {
            throw NumericalError("to_fields: phase unwrap blocked by a near-node at index " +
                                 std::to_string(i));
        }
    }
    return WaveFields{normalize(rho), std::move(phi), std::move(mask)};
}

WaveField conjugate(WaveField psi) {
    for (auto& v : psi.values) v = std::conj(v);
    return psi;
}

NonlinearResidual nonlinear_residual(const WaveField& psi, double k,
                                     const ModelParams& params) {
    require_wave_1d(psi);
    if (!(k > 0.0)) throw std::invalid_argument("nonlinear_residual: k must be positive");

    NonlinearResidual out;
    out.coefficient = 0.5 * k * k - 4.0 * params.xi();
    if (out.coefficient == 0.0) {
        out.residual = 0.0;
        return out;
    }

    ScalarField amp(psi.grid);
    double peak = 0.0;
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
        amp[i] = std::abs(psi.values[i]);
        peak = std::max(peak, amp[i]);
    }
    const double mask_level = std::sqrt(kMaskRel) * peak; // |psi| mask from |psi|^2 rule
    const ScalarField lap = laplacian(amp);

    double acc = 0.0;
    const double inv_mass = params.inv_mass_coord(0);
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
        if (amp[i] <= mask_level) continue;
        const double term = out.coefficient * inv_mass * lap[i] / amp[i];
        acc += term * term * std::norm(psi.values[i]) * psi.grid.quadrature_weight(i);
    }
    out.residual = std::sqrt(acc);
    return out;
}

} // namespace entropic
