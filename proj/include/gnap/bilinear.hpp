#pragma once
// Dyadic type-II bilinear sums over the composite function F, the
// congruence-merge + phase-composition route that re-derives them one
// modulus pair at a time, and lcm-multiplicity / dyadic-divisor counts.
#include "gnap/progressions.hpp"
#include <map>
#include <optional>

namespace gnap {

struct lattice_interval {
    u64 lo = 0, hi = 0; // inclusive; empty when lo > hi
};

struct typeII_config {
    u64 K = 1, L = 1, Q = 1;
    double delta = 0.1;
    // optional chooser (k,k') -> subinterval of [0,L]; default [1,L]
    std::function<lattice_interval(u64, u64)> I;

    lattice_interval interval(u64 k, u64 kp) const;
    // K >= 1, delta in (0,1/2); hypothesis error unless 10 Q^2 <= L
    void validate() const;
};

struct typeII_result {
    double value = 0.0;      // sum over K<=k,k'<2K of |inner(k,k')|
    double normalized = 0.0; // value / (K^2 L)
    bool exceeds = false;    // normalized >= delta
};

// direct route from tabulated F values; coverage error unless the
// tabulation reaches 4KL
typeII_result typeII_sum(const typeII_config& cfg, const f_spec& spec,
                         const std::vector<cplx>& F_tab, int threads = 1);

// inner sum for one (k,k') pair, direct tabulated route
cplx typeII_inner_direct(const typeII_config& cfg, const f_spec& spec,
                         const std::vector<cplx>& F_tab, u64 k, u64 kp);

// same inner sum via merged congruences and composed phases, never
// touching a tabulation; sums over the spec's (q,q') entry pairs
cplx typeII_inner_merged(const typeII_config& cfg, const f_spec& spec, u64 k, u64 kp);

/* ----- congruence merge ----- */

struct merged_congruence {
    u64 modulus = 1; // lcm of the reduced moduli ([q,q'] for reduced residues)
    u64 residue = 0;
};

// solve k l = a_q (mod q) and k' l = a_qp (mod q'); none when either
// congruence or the crt combination is unsolvable
std::optional<merged_congruence> congruence_merge(u64 k, u64 kp, u64 q, u64 qp,
                                                 u64 a_q, u64 a_qp);

// coefficients of phi(scale*m + shift) by binomial expansion; exact mod 1
// in fixed point, so eval_frac agrees bitwise with the substituted phase
poly_phase composed_phase(const poly_phase& phi, u64 scale, u64 shift);

/* ----- lcm multiplicity statistics ----- */

// ordered pairs (q,q') in [Q,2Q)^2 with [q,q'] in [R,2R); multiplicities
// m_q(r) = #{q' : [q,q'] = r} are kept as a sorted packed array so large
// windows stay in memory
struct lcm_stats_result {
    u64 Q = 0, R = 0;
    double D = 0.0; // Q^2 / (2R)
    u64 pair_count = 0;
    std::vector<u64> mult_key; // (q-Q)*R + (r-R), sorted
    std::vector<u64> mult_cnt;
    std::map<u64, u64> histogram; // multiplicity value -> #pairs in E carrying it
    std::vector<u64> sigma;       // sigma_D(q) for q in [Q,2Q)

    u64 mult_of(u64 q, u64 r) const;
    std::size_t entry_count() const { return mult_key.size(); }
    // i-th distinct (q, r, m) entry
    void entry(std::size_t i, u64& q, u64& r, u64& m) const;
    u64 tail(u64 m0) const; // #pairs with m_q([q,q']) >= m0
};

// exact enumeration; config error outside Q <= R <= 4Q^2, cost error when
// Q > 1e4 or the pair set outgrows memory
lcm_stats_result lcm_stats(u64 Q, u64 R);

// divisors of q in [D, 8D], inclusive
u64 sigma_D(u64 q, double D);
// sum over q in [Q,2Q) of sigma_D(q)^2
u64 sigma_D_second_moment(u64 Q, double D);

} // namespace gnap
