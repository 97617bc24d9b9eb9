#include "gnap/fft.hpp"
#include <map>

namespace gnap {

namespace {

// twiddle tables per size, one cache per thread so the recursive norm code
// can fan out without locking
const std::vector<cplx>& twiddles(std::size_t n) {
    thread_local std::map<std::size_t, std::vector<cplx>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> w(n / 2);
    const long double step = -2.0L * 3.14159265358979323846264338327950288L / (long double)n;
    for (std::size_t k = 0; k < n / 2; k++) {
        long double a = step * (long double)k;
        w[k] = {(double)cosl(a), (double)sinl(a)};
    }
    return cache.emplace(n, std::move(w)).first->second;
}

} // namespace

void fft_pow2(cplx* a, std::size_t n, int sign) {
    if (n < 2) return;
    for (std::size_t i = 1, j = 0; i < n; i++) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const std::vector<cplx>& w = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; k++) {
                cplx t = w[k * stride];
                if (sign > 0) t = std::conj(t);
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * t;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

std::vector<cplx> dft_any(const std::vector<cplx>& in) {
    std::size_t n = in.size();
    if (n == 0) return {};
    if ((n & (n - 1)) == 0) {
        std::vector<cplx> a = in;
        fft_pow2(a.data(), n, -1);
        return a;
    }
    // Bluestein: x_n e(-n^2/2N) convolved with the conjugate chirp.
    // n^2/2 mod N stays exact via n^2 mod 2N.
    std::size_t m = next_pow2(2 * n - 1);
    const long double pi = 3.14159265358979323846264338327950288L;
    std::vector<cplx> chirp(n);
    for (std::size_t k = 0; k < n; k++) {
        u64 t = (u64)((__uint128_t)k * k % (2 * n));
        long double a = -pi * (long double)t / (long double)n;
        chirp[k] = {(double)cosl(a), (double)sinl(a)};
    }
    std::vector<cplx> fa(m, cplx{0, 0}), fb(m, cplx{0, 0});
    for (std::size_t k = 0; k < n; k++) fa[k] = in[k] * chirp[k];
    fb[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; k++) fb[k] = fb[m - k] = std::conj(chirp[k]);
    fft_pow2(fa.data(), m, -1);
    fft_pow2(fb.data(), m, -1);
    for (std::size_t k = 0; k < m; k++) fa[k] *= fb[k];
    fft_pow2(fa.data(), m, +1);
    std::vector<cplx> out(n);
    double inv_m = 1.0 / double(m);
    for (std::size_t k = 0; k < n; k++) out[k] = fa[k] * inv_m * chirp[k];
    return out;
}

} // namespace gnap
