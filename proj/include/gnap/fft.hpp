#pragma once
// Power-of-two FFT plus a Bluestein wrapper for arbitrary transform sizes.
// Twiddles come from long double trig; relative error stays near 1e-15 up
// to length 2^20, well inside the 1e-10 contract used by the norm code.
#include "gnap/common.hpp"

namespace gnap {

// in-place forward (sign -1) or inverse (sign +1, unscaled) transform;
// n must be a power of two
void fft_pow2(cplx* a, std::size_t n, int sign);

// forward DFT of arbitrary length: out[k] = sum_n in[n] e(-nk/N)
std::vector<cplx> dft_any(const std::vector<cplx>& in);

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace gnap
