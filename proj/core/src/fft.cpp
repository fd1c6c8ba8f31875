#include "entropic/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entropic {

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (n < 2 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("FftPlan requires a power-of-two size >= 2");
    }
    bitrev_.resize(n);
    std::size_t bits = 0;
    while ((1ull << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < bits; ++b) {
            if (i & (1ull << b)) r |= 1ull << (bits - 1 - b);
        }
        bitrev_[i] = r;
    }
    twiddles_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(n);
        twiddles_[k] = {std::cos(angle), std::sin(angle)};
    }
}

void FftPlan::transform(std::vector<std::complex<double>>& data, bool inverse) const {
    if (data.size() != n_) throw std::invalid_argument("FftPlan: data size mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t stride = n_ / len;
        for (std::size_t base = 0; base < n_; base += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> w = twiddles_[k * stride];
                if (inverse) w = std::conj(w);
                const std::complex<double> a = data[base + k];
                const std::complex<double> b = data[base + k + len / 2] * w;
                data[base + k] = a + b;
                data[base + k + len / 2] = a - b;
            }
        }
    }
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n_);
        for (auto& v : data) v *= inv_n;
    }
}

void FftPlan::forward(std::vector<std::complex<double>>& data) const { transform(data, false); }
void FftPlan::inverse(std::vector<std::complex<double>>& data) const { transform(data, true); }

} // namespace entropic
