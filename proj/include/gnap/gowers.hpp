#pragma once
// Uniformity norms of finite sequences f[0..Y], normalized against the
// interval indicator.
//
// The sequence is viewed inside the cyclic group of order N = 2^k (Y+1).
// Since N > (k+1) Y, a parallelepiped whose 2^k vertices all land in the
// support never wraps, so the unnormalized box sum
//     S_k(f) = sum over n, h_1..h_k of prod_w C^|w| f(n + w.h)
// equals a plain integer-shift enumeration and the reported ratio
// (S_k(f)/S_k(1))^(1/2^k) does not depend on the embedding size.
#include "gnap/arithfn.hpp"

namespace gnap {

struct complex_seq {
    std::vector<cplx> values; // f[0..Y]
    bool bounded = true;      // sup |f| <= 1 promised by the producer
};

enum class gowers_strategy { auto_select, naive, recursive_fft, u1_mean };

const char* strategy_name(gowers_strategy s);

struct gowers_result {
    int k = 1;
    double norm = 0.0;          // (raw_numerator / normalizer)^(1/2^k)
    double raw_numerator = 0.0; // 2^k-th power of the unnormalized norm
    double normalizer = 0.0;    // same quantity for the interval indicator
    gowers_strategy strategy = gowers_strategy::u1_mean;
};

// auto_select: k=1 mean, k=2 fft, k>=3 recursive over the derivative with
// the fft base case. cost error when the requested strategy would exceed
// op_budget elementary operations.
gowers_result gowers_norm(const complex_seq& f, int k,
                          gowers_strategy strategy = gowers_strategy::auto_select,
                          int threads = 1, double op_budget = 4e9);

// f restricted to n = a (mod q), n in [1, X], reindexed by the
// progression position; requires gcd(a,q)=1, a<q, and q*k <= X <= table.X
gowers_result gowers_norm_in_progression(const arith_table& t, u64 q, u64 a, u64 X, int k,
                                         gowers_strategy strategy = gowers_strategy::auto_select,
                                         int threads = 1);

// g[n] = f[n+h] conj(f[n]) on the overlap of the two index ranges
complex_seq multiplicative_derivative(const complex_seq& f, i64 h);

// group norm on Z_N with wraparound, N = f.size(); recursive with the
// Bluestein DFT base case
double gowers_norm_cyclic(const std::vector<cplx>& f, int k, int threads = 1);

} // namespace gnap
