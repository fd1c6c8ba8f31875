#include "entropic/model_params.hpp"

#include <stdexcept>
#include <string>

namespace entropic {

ModelParams::ModelParams(std::vector<double> masses, double eta, double xi, double dt, int dim)
    : masses_(std::move(masses)), eta_(eta), xi_(xi), dt_(dt), dim_(dim) {
    if (masses_.empty()) throw std::invalid_argument("at least one particle mass required");
    for (double m : masses_) {
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw std::invalid_argument("particle masses must be positive and finite");
        }
    }
    if (!(eta_ > 0.0) || !std::isfinite(eta_)) {
        throw std::invalid_argument("eta must be positive and finite");
    }
    if (xi_ < 0.0 || !std::isfinite(xi_)) {
        // Negative coupling makes the Fisher term destabilizing.
        throw std::invalid_argument("xi must be nonnegative");
    }
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw std::invalid_argument("dt must be positive and finite");
    }
    if (dim_ != 1 && dim_ != 2) {
        throw std::invalid_argument("dim must be 1 or 2");
    }
    for (std::size_t n = 0; n < masses_.size(); ++n) {
        const double a = masses_[n] / (eta_ * dt_);
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw std::invalid_argument("multiplier alpha_" + std::to_string(n) +
                                        " is not positive and finite");
        }
    }
}

std::vector<double> ModelParams::multipliers() const {
    std::vector<double> out(masses_.size());
    for (std::size_t n = 0; n < masses_.size(); ++n) out[n] = masses_[n] / (eta_ * dt_);
    return out;
}

double regraduate(double xi) {
    if (!(xi > 0.0)) throw std::invalid_argument("regraduate requires xi > 0");
    return std::sqrt(8.0 * xi);
}

double multiplier_from_step_constraint(double kappa, int d) {
    if (!(kappa > 0.0)) throw std::domain_error("step constraint kappa must be positive");
    if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2, or 3");
    return static_cast<double>(d) / kappa;
}

} // namespace entropic
