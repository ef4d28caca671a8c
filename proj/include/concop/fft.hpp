#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace concop {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 transform, sign = -1 forward / +1 inverse
// (inverse is unscaled). Twiddles come from std::polar per stage for
// near-machine accuracy at the sizes used here (N <= 2^17).
inline void fft_radix2(cvec& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft: size must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * pi / static_cast<double>(len);
        const std::size_t half = len >> 1;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const cplx w = std::polar(1.0, ang * static_cast<double>(k));
                const cplx u = a[i + k];
                const cplx t = a[i + k + half] * w;
                a[i + k] = u + t;
                a[i + k + half] = u - t;
            }
        }
    }
}

} // namespace detail

// Unnormalized DFT: X[m] = sum_k x[k] e^{-2πi km/N}
inline void dft_inplace(cvec& a) { detail::fft_radix2(a, -1); }

// Unnormalized inverse: x[k] = sum_m X[m] e^{+2πi km/N}  (no 1/N)
inline void idft_inplace(cvec& a) { detail::fft_radix2(a, +1); }

} // namespace concop
