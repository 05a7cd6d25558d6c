#pragma once

// Minimal iterative radix-2 FFT used by the aligned fast path of the
// continuous-convention transforms.  Desk-scale sizes only.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mustar/grid.hpp"

namespace mustar::detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// In-place forward DFT: a[m] <- sum_j a[j] exp(-2*pi*i*j*m/M).
inline void fft_forward(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_forward: size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -kTwoPi / static_cast<double>(len);
        const cplx wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace mustar::detail
