#pragma once
// Ramare weights and the windowed-prime identity, the Dirichlet
// complement decomposition f = f'*g with its squarefull partial sums,
// progression counts coprime to a prime window, and the exact partition
// of sum f(n)F(n) with dyadic slices and the Cauchy-Schwarz bound.
#include "gnap/progressions.hpp"

namespace gnap {

/* ----- prime window ----- */

struct ramare_window {
    double Y = 2.0, Z = 3.0; // primes p with Y <= p < Z
    void validate() const;   // config error unless 2 <= Y < Z
    bool contains(u64 p) const { return double(p) >= Y && double(p) < Z; }
};

// primes in [Y,Z), ascending
std::vector<u64> window_primes(const ramare_window& w);

// w(n) = 1/(1 + #{windowed p : p | n}), exact
rational ramare_weight(u64 n, const ramare_window& w, const spf_table& spf);

// 1 iff no windowed prime p has p^2 | n
int musq_window(u64 n, const ramare_window& w, const spf_table& spf);

// sum over windowed p | n of w(n/p); equals [some windowed p divides n]
// whenever musq_window(n) = 1
struct identity_check {
    bool applicable = false; // musq_window(n) == 1
    rational lhs;
    int expected = 0;
    bool pass = false;
};
identity_check ramare_identity_check(u64 n, const ramare_window& w, const spf_table& spf);

/* ----- convolution complement ----- */

// complement of the completely multiplicative envelope: g(p) = 0 and g is
// read only on prime powers, so its support is squarefull
struct g_spec {
    std::function<cplx(u64 p, int e)> at; // e >= 1
    std::string name = "g";
};

// f'(p^k) = f(p)^k plus the triangular solve for g in f = f'*g
std::pair<mult_spec, g_spec> decompose(const mult_spec& f);

// max_n |f(n) - (f'*g)(n)| over [1,X]; the convolution iterates squarefull
// divisors only, which is exhaustive because g(p) = 0
double verify_convolution(const arith_table& f_tab, const arith_table& fprime_tab,
                          const g_spec& g, u64 X);

struct g_sums {
    double head = 0.0;          // sum_{n<=N} |g(n)|
    double tail_weighted = 0.0; // sum_{N<=n<=cap} |g(n)|/n
    u64 cap = 0;
};
// exact sums by recursive generation of squarefull integers; cap defaults
// to N^2
g_sums g_partial_sums(const g_spec& g, u64 N, u64 cap = 0);

/* ----- windowed-coprime progression count ----- */

struct coprime_count {
    u64 count = 0;                  // n in the progression, no windowed prime divides n
    double progression_count = 0.0; // |I|/q + 1
    double mertens_prediction = 0.0; // progression_count * prod over p not dividing q of (1 - 1/p)
};
// exact count by a segmented sieve over the progression elements
coprime_count coprime_window_count(const progression_spec& p, const ramare_window& w);

/* ----- partition of sum f(n) F(n) ----- */

struct sigma_partition_result {
    cplx total = 0.0;          // sum_{1<=n<=X} f(n) F(n)
    cplx part_musq_zero = 0.0; // musq_window(n) = 0
    cplx part_coprime = 0.0;   // musq = 1, no windowed prime divides n
    cplx part_sigma = 0.0;     // musq = 1, weighted by sum_p w(n/p) (= 1 exactly)
    double residual = 0.0;     // |total - sum of the three parts|
    double abs_F_sum = 0.0;    // sum |F(n)|, the scale for the residual tolerance

    // the same main term as a (p,m) double sum, and its relaxations with
    // the two inner conditions dropped and f(pm) replaced by f(p)f(m)
    cplx sigma_mroute = 0.0; // = part_sigma up to roundoff
    cplx sigma_prime = 0.0;  // unconditioned inner sum
    cplx rem_musq = 0.0;     // dropped terms with musq_window(m) = 0
    cplx rem_pm = 0.0;       // dropped terms with musq(m) = 1, p | m
    std::vector<std::pair<double, cplx>> slices; // (P_j, slice of sigma_prime), P_j = Y 2^j
};
sigma_partition_result sigma_partition(const arith_table& f_tab, const f_spec& spec,
                                       const ramare_window& w, int threads = 1);

struct cs_gap {
    double lhs = 0.0;   // |sigma_prime slice at P|^2
    double rhs = 0.0;   // (X/P) sum_{m<=X/P} |sum_{p in slice, p<=X/m} f(p)F(pm)|^2
    bool ok = false;    // lhs <= rhs, which Cauchy-Schwarz guarantees
    double ratio = 0.0; // lhs/rhs when rhs > 0
};
cs_gap cauchy_schwarz_gap(const arith_table& f_tab, const f_spec& spec,
                          const ramare_window& w, double P);

} // namespace gnap
