// Radix-2 complex FFT used for boundary sampling and Fourier coefficients.
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hardy {

using cd = std::complex<double>;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place forward transform: x[k] <- sum_j x[j] exp(-2*pi*i*j*k/n).
inline void fft_inplace(std::vector<cd>& x, bool inverse = false) {
    const std::size_t n = x.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * pi / double(len);
        const cd wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cd u = x[i + k];
                cd v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

inline std::vector<cd> fft(std::vector<cd> x) {
    fft_inplace(x, false);
    return x;
}

inline std::vector<cd> ifft_unscaled(std::vector<cd> x) {
    fft_inplace(x, true);
    return x;
}

}  // namespace hardy
