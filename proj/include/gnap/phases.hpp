#pragma once
// Polynomial phases on the torus, evaluated in 0.64 fixed point. A
// coefficient is a u64 numerator over 2^64; multiplying by an integer
// with natural wraparound reduces mod 1 exactly, so evaluation never
// loses the fractional part to a large mantissa the way double Horner
// would at n ~ 1e9.
#include "gnap/common.hpp"

namespace gnap {

struct poly_phase {
    std::vector<u64> alpha; // alpha[i] multiplies n^(i+1)
    u64 alpha0 = 0;         // constant term

    int degree() const { return (int)alpha.size(); }

    static poly_phase from_doubles(const std::vector<double>& a, double a0 = 0.0);

    // phi(n) mod 1 as 0.64 fixed point (wrapping Horner)
    u64 eval_frac(u64 n) const {
        u64 acc = 0;
        for (int i = degree() - 1; i >= 0; i--) acc = (acc + alpha[i]) * n;
        return acc + alpha0;
    }
    cplx eval(u64 n) const { return unit_phase(eval_frac(n)); }

    // m * phi, exact
    poly_phase scaled(u64 m) const;
};

// e(phi(n)) for n in [0,N)
std::vector<cplx> eval_phase(const poly_phase& phi, u64 N);

// (1/N) sum_{n<N} e(phi(n))
cplx weyl_sum(const poly_phase& phi, u64 N);

// max_i N^i || alpha_i ||, the smoothness norm over a length-N range
double smoothness_norm(const poly_phase& phi, u64 N);

struct dio_approx {
    u64 r = 1;
    double residual = 0.0; // max_i N^i || r alpha_i ||
};

// smallest r in [1, r_max] minimizing the residual (exhaustive scan; the
// s=1 case is cross-checked against continued-fraction convergents)
dio_approx best_denominator(const poly_phase& phi, u64 N, u64 r_max);

// convergent-denominator search for a single frequency; returns the best
// residual among convergent denominators <= r_max
dio_approx best_denominator_cf(u64 alpha, u64 N, u64 r_max);

struct equidist_report {
    double delta = 0.0;
    double defect = 0.0; // max |mean of e(m phi)| over the tested progressions
    bool equidistributed = false;
    // witness progression: start, start+step, ..., length terms, frequency m
    u64 witness_start = 0, witness_step = 1, witness_length = 0;
    u64 witness_freq = 1;
};

// total delta-equidistribution scan: sub-progressions of [0,N) with at
// least delta*N terms (hence step <= 1/delta), frequencies m <= ceil(1/delta).
// |S(-m)| = |S(m)|, so only positive m are scanned.
equidist_report equidist_defect(const poly_phase& phi, u64 N, double delta,
                                int threads = 1, double op_budget = 4e9);

} // namespace gnap
