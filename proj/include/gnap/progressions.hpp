#pragma once
// Correlation sums of tabulated functions against polynomial phases along
// arithmetic progressions, worst-residue discrepancies, the multi-modulus
// composite function F, and dyadic-window exceptional-moduli scans.
#include "gnap/gowers.hpp"
#include "gnap/phases.hpp"

namespace gnap {

/* ----- progressions and the composite function F ----- */

struct progression_spec {
    u64 q = 1;          // modulus
    u64 a = 0;          // residue, 0 <= a < q, gcd(a,q)=1
    u64 lo = 0, hi = 0; // interval [lo,hi], inclusive integer endpoints

    // config error on a >= q, gcd(a,q) != 1, lo > hi, or hi > X
    void validate(u64 X) const;
};

struct f_entry {
    progression_spec prog;
    poly_phase phase;
};

// F(n) = sum over entries with n in I_q and n = a_q (mod q) of
// e(phase((n - a_q)/q)); moduli live in the dyadic window [Q, 2Q).
struct f_spec {
    std::vector<f_entry> entries;
    u64 Q = 1;
    u64 X = 0;
    double T = 0.0; // cached sum of (|I_q|/q + 1)

    double recompute_T() const;
    void refresh() { T = recompute_T(); }
    // config error on moduli outside [Q,2Q), bad entries, or a stale T
    void validate() const;

    // deterministic family: `count` moduli from [Q,2Q) with random reduced
    // residues, random subintervals of [0,X], degree-s phases
    static f_spec random(u64 Q, u64 X, int count, int s, u64 seed);
};

cplx eval_F(const f_spec& spec, u64 n);

// values of F on [0,X], built progression-by-progression so the cost is
// sum of |I_q|/q rather than X * #entries
std::vector<cplx> tabulate_F(const f_spec& spec);

// sum over n <= X, D | n of |F(n)| from a tabulated array
double divisor_mass(const std::vector<cplx>& F_tab, u64 D);

/* ----- correlation sums ----- */

// sum over n in [max(lo,1), hi], n = a (mod q) of f(n) e(phi((n-a)/q)),
// compensated, fixed order; coverage error if hi > table.X. Tables start
// at n = 1, so a lo of 0 contributes nothing at n = 0.
cplx correlation_sum(const arith_table& t, const progression_spec& p,
                     const poly_phase& phi);

// max over reduced residues a of |sum_{n<=X, n=a(q)} f(n)|, with argmax
std::pair<double, u64> max_progression_sum(const arith_table& t, u64 q, u64 X);

// max over reduced a of |sum_{n<=X, n=a(q)} f - (1/phi(q)) sum_{n<=X,(n,q)=1} f|
double bv_discrepancy(const arith_table& t, u64 q, u64 X);
std::pair<double, u64> bv_discrepancy_at(const arith_table& t, u64 q, u64 X);

/* ----- double sup over residue and phase ----- */

struct sup_result {
    u64 a = 0;
    poly_phase phase;
    double value = 0.0;          // lower bound on the true sup
    bool budget_exhausted = false; // grid was subsampled to fit the budget
};

// exhaustive over reduced residues; per residue the phase search uses the
// rational grid {c/d : d <= 20} plus multistart coordinate ascent, so the
// alpha = 0 point is always contained in the search set
sup_result sup_correlation(const arith_table& t, u64 q, u64 X, int s,
                           int restarts, u64 seed, double op_budget = 4e9);

/* ----- exceptional-moduli scan ----- */

struct bv_row {
    u64 q = 0;
    u64 a = 0;                 // attaining residue
    std::vector<double> alpha; // attaining phase (sup mode only)
    double value = 0.0;
    double threshold = 0.0;
    bool exceptional = false;
};

struct bv_report {
    std::vector<bv_row> rows; // ascending q
    u64 exceptional_count = 0;
    double mean_value = 0.0;
    double max_value = 0.0;
};

// phi_source: -1 = discrepancy against the coprime mean, 0 = plain
// progression sums, s >= 1 = sup_correlation with degree-s phases.
// Scans q in [Q,2Q) (or [1,2Q) with full_range), flags q exceptional when
// value >= eps*X/Q; hypothesis error unless 10 Q^2 <= X.
bv_report exceptional_scan(const arith_table& t, u64 Q, u64 X, int phi_source,
                           double eps, int restarts = 4, u64 seed = 1,
                           int threads = 1, bool full_range = false);

} // namespace gnap
