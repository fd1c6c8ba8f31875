#include "entropic/rng.hpp"

#include <cmath>
#include <numbers>

namespace entropic::rng {

double uniform(std::uint64_t seed, std::uint64_t walker, std::uint64_t step,
               std::uint64_t draw) {
    return uniform01(hash4(seed, walker, step, draw));
}

double normal(std::uint64_t seed, std::uint64_t walker, std::uint64_t step,
              std::uint64_t draw) {
    // Box-Muller on two counter-derived uniforms; each draw index gets its
    // own pair so consecutive normals stay independent.
    const double u1 = uniform01(hash4(seed, walker, step, 2 * draw));
    const double u2 = uniform01(hash4(seed, walker, step, 2 * draw + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace entropic::rng
