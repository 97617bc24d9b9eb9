#pragma once
// Tables of bounded multiplicative functions on [1,X]: linear sieves for
// the standard kinds, spf-driven tabulation for anything given by its
// values on prime powers, and a small binary cache.
#include "gnap/common.hpp"
#include <functional>
#include <optional>

namespace gnap {

/* ----- multiplicative functions by prime-power values ----- */
struct mult_spec {
    // value at p^e, e >= 1; must stay in the closed unit disc
    std::function<cplx(u64 p, int e)> at;
    bool completely_multiplicative = false;
    std::string name = "custom";

    static mult_spec mobius();
    static mult_spec liouville();
    static mult_spec unit();
    static mult_spec squarefree();
    // deterministic pseudorandom values in the unit disc, keyed by (seed,p,e)
    static mult_spec random_disc(u64 seed);
};

/* ----- smallest prime factor ----- */
struct spf_table {
    u64 X = 0;
    std::vector<std::uint32_t> spf; // spf[n] for n in [1,X], spf[1] = 1
    std::uint32_t operator[](u64 n) const { return spf[n]; }
};

spf_table sieve_spf(u64 X);

// (p,e) pairs, ascending p; n must be in [1, table.X]
std::vector<std::pair<u64, int>> factorize(u64 n, const spf_table& t);

/* ----- tabulated function values ----- */
enum class fn_kind : unsigned char { mobius = 1, liouville = 2, unit = 3, custom = 4 };

const char* fn_kind_name(fn_kind k);

struct arith_table {
    fn_kind kind = fn_kind::unit;
    u64 X = 0;
    bool bounded = true;
    std::vector<std::int8_t> small; // mobius / liouville / unit, indexed by n
    std::vector<cplx> wide;         // custom, indexed by n

    bool is_small() const { return kind != fn_kind::custom; }
    cplx at(u64 n) const { return is_small() ? cplx(small[n], 0.0) : wide[n]; }
    // mean over n in [1,X] of f(n) restricted to (n,q)=1 is computed by callers
};

// int8 linear sieves; no spf array is materialized, so X = 1e8 fits easily
arith_table sieve_mobius(u64 X);
arith_table sieve_liouville(u64 X);
arith_table unit_table(u64 X);

// general tabulation via spf factorization; domain error if any value
// leaves the unit disc
arith_table table_from_multspec(const mult_spec& spec, u64 X);

// convenience: named kind or a seeded random spec
arith_table table_for(const std::string& function, u64 X, u64 seed);

/* ----- cache ----- */
// layout: "GPAT" | version u32 | kind u8 | X u64 | values
// (int8 for the sieved kinds, re/im doubles for custom), little endian.
bool write_cache(const std::string& dir, const arith_table& t);
std::optional<arith_table> load_cache(const std::string& dir, fn_kind kind, u64 X);

// capacity budget for any single table (entries)
constexpr u64 table_capacity = 1000000000ull;

} // namespace gnap
