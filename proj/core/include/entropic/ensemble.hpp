#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "entropic/drift_potential.hpp"
#include "entropic/model_params.hpp"
#include "entropic/scalar_field.hpp"

namespace entropic {

/// Per-coordinate displacement statistics of one ensemble step.
struct StepStatistics {
    std::vector<double> sample_mean;
    std::vector<double> sample_variance; // divides by W - 1
    std::vector<double> mean_standard_error;
    std::vector<double> variance_standard_error;
};

/// A set of walkers carrying definite configuration-space positions through
/// entropic time. Positions are a W x n_coords row-major matrix. The RNG
/// stream is derived from (seed, walker, step), so a fixed (seed, config)
/// reproduces trajectories bitwise regardless of thread count.
class Ensemble {
public:
    Ensemble(std::size_t n_walkers, int n_coords, std::uint64_t seed);

    /// Walkers drawn from a grid density by inverse-CDF sampling (uses the
    /// "init" step index of the seed stream; deterministic).
    static Ensemble sample_from(const DensityField& rho, std::size_t n_walkers,
                                std::uint64_t seed);

    std::size_t n_walkers() const { return n_walkers_; }
    int n_coords() const { return n_coords_; }
    double time() const { return time_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t step_count() const { return step_count_; }

    std::span<const double> positions() const { return positions_; }
    std::span<double> positions() { return positions_; }
    double position(std::size_t walker, int coord) const {
        return positions_[walker * static_cast<std::size_t>(n_coords_) +
                          static_cast<std::size_t>(coord)];
    }

    /// Place all walkers at one configuration point.
    void set_all(std::span<const double> x);

private:
    friend Ensemble step(const Ensemble&, const ModelParams&, const DriftPotential&,
                         const Grid&, int);
    std::size_t n_walkers_;
    int n_coords_;
    std::uint64_t seed_;
    std::uint64_t step_count_ = 0;
    double time_ = 0.0;
    std::vector<double> positions_;
};

/// One entropic step: dx^A = b^A dt + dw^A with drift b^A = eta m^AB d_B S
/// and Gaussian dw of variance eta dt / m_n per coordinate. Walkers leaving
/// the domain wrap (periodic) or mirror-reflect (reflecting). Throws
/// NumericalError naming the walker when the drift is non-finite.
Ensemble step(const Ensemble& e, const ModelParams& params, const DriftPotential& dp,
              const Grid& domain, int n_threads = 1);

/// n_steps applications of step.
Ensemble propagate(const Ensemble& e, const ModelParams& params, const DriftPotential& dp,
                   const Grid& domain, int n_steps, int n_threads = 1);

/// Displacement mean/variance per coordinate between two ensemble snapshots.
StepStatistics step_statistics(const Ensemble& before, const Ensemble& after,
                               const ModelParams& params);

/// Gaussian kernel density estimate on the grid, normalized. Bandwidth must
/// be at least the grid spacing; pass 0 to use the Silverman-style default
/// 1.06 sigma_hat W^(-1/5) (clamped to the spacing). 1D and 2D product
/// kernels; periodic domains use wrapped distances.
DensityField empirical_density(const Ensemble& e, const Grid& grid, double bandwidth = 0.0,
                               int n_threads = 1);

} // namespace entropic
