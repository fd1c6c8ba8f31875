#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace entropic {

/// Radix-2 iterative discrete Fourier transform with a fixed plan
/// (precomputed twiddles and bit-reversal table). Sizes must be powers of
/// two. Forward is unnormalized; inverse divides by n.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);

    std::size_t size() const { return n_; }
    void forward(std::vector<std::complex<double>>& data) const;
    void inverse(std::vector<std::complex<double>>& data) const;

private:
    void transform(std::vector<std::complex<double>>& data, bool inverse) const;

    std::size_t n_;
    std::vector<std::size_t> bitrev_;
    std::vector<std::complex<double>> twiddles_; // quarter-table per stage, forward sign
};

} // namespace entropic
