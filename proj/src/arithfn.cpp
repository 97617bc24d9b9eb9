#include "gnap/arithfn.hpp"
#include <cstdio>
#include <cstring>
#include <filesystem>

namespace gnap {

/* ----- mult_spec factories ----- */

mult_spec mult_spec::mobius() {
    mult_spec s;
    s.at = [](u64, int e) { return cplx(e == 1 ? -1.0 : 0.0, 0.0); };
    s.name = "mobius";
    return s;
}

mult_spec mult_spec::liouville() {
    mult_spec s;
    s.at = [](u64, int e) { return cplx(e % 2 ? -1.0 : 1.0, 0.0); };
    s.completely_multiplicative = true;
    s.name = "liouville";
    return s;
}

mult_spec mult_spec::unit() {
    mult_spec s;
    s.at = [](u64, int) { return cplx(1.0, 0.0); };
    s.completely_multiplicative = true;
    s.name = "unit";
    return s;
}

mult_spec mult_spec::squarefree() {
    mult_spec s;
    s.at = [](u64, int e) { return cplx(e == 1 ? 1.0 : 0.0, 0.0); };
    s.name = "squarefree";
    return s;
}

mult_spec mult_spec::random_disc(u64 seed) {
    mult_spec s;
    s.at = [seed](u64 p, int e) {
        u64 key[3] = {seed, p, (u64)e};
        rng r(fnv1a(key, sizeof key) | 1ull);
        return r.next_unit_disc();
    };
    s.name = "random";
    return s;
}

/* ----- sieves ----- */

static void check_capacity(u64 X) {
    if (X < 1) throw domain_error("table bound X must be at least 1");
    if (X > table_capacity) throw capacity_error("table of " + std::to_string(X) + " entries exceeds the capacity budget");
}

spf_table sieve_spf(u64 X) {
    check_capacity(X);
    spf_table t;
    t.X = X;
    t.spf.assign(X + 1, 0);
    if (X >= 1) t.spf[1] = 1;
    for (u64 i = 2; i <= X; i++) {
        if (t.spf[i] == 0)
            for (u64 j = i; j <= X; j += i)
                if (t.spf[j] == 0) t.spf[j] = (std::uint32_t)i;
    }
    return t;
}

std::vector<std::pair<u64, int>> factorize(u64 n, const spf_table& t) {
    if (n < 1 || n > t.X) throw domain_error("factorize: n outside table range");
    std::vector<std::pair<u64, int>> out;
    while (n > 1) {
        u64 p = t.spf[n];
        int e = 0;
        while (n % p == 0) { n /= p; e++; }
        out.push_back({p, e});
    }
    return out;
}

const char* fn_kind_name(fn_kind k) {
    switch (k) {
        case fn_kind::mobius: return "mobius";
        case fn_kind::liouville: return "liouville";
        case fn_kind::unit: return "unit";
        default: return "custom";
    }
}

// linear sieve over [1,X]: each composite is crossed once via its least
// prime, and mu/lambda fall out of the recurrence without storing spf
static arith_table sieve_signs(u64 X, bool mobius) {
    check_capacity(X);
    arith_table t;
    t.kind = mobius ? fn_kind::mobius : fn_kind::liouville;
    t.X = X;
    t.small.assign(X + 1, 0);
    t.small[1] = 1;
    std::vector<std::uint32_t> primes;
    std::vector<std::uint8_t> composite(X + 1, 0);
    for (u64 i = 2; i <= X; i++) {
        if (!composite[i]) {
            primes.push_back((std::uint32_t)i);
            t.small[i] = -1;
        }
        for (std::uint32_t p : primes) {
            u64 ip = i * p;
            if (ip > X) break;
            composite[ip] = 1;
            if (i % p == 0) {
                t.small[ip] = mobius ? 0 : (std::int8_t)(-t.small[i]);
                break;
            }
            t.small[ip] = (std::int8_t)(-t.small[i]);
        }
    }
    return t;
}

arith_table sieve_mobius(u64 X) { return sieve_signs(X, true); }
arith_table sieve_liouville(u64 X) { return sieve_signs(X, false); }

arith_table unit_table(u64 X) {
    check_capacity(X);
    arith_table t;
    t.kind = fn_kind::unit;
    t.X = X;
    t.small.assign(X + 1, 1);
    t.small[0] = 0;
    return t;
}

arith_table table_from_multspec(const mult_spec& spec, u64 X) {
    check_capacity(X);
    spf_table spf = sieve_spf(X);
    arith_table t;
    t.kind = fn_kind::custom;
    t.X = X;
    t.wide.assign(X + 1, cplx{0, 0});
    t.wide[1] = 1.0;
    for (u64 n = 2; n <= X; n++) {
        u64 p = spf[n], m = n;
        int e = 0;
        while (m % p == 0) { m /= p; e++; }
        cplx v = spec.at(p, e);
        if (std::abs(v) > 1.0 + 1e-12)
            throw domain_error(spec.name + ": value at " + std::to_string(p) + "^" + std::to_string(e) + " leaves the unit disc");
        t.wide[n] = t.wide[m] * v;
    }
    return t;
}

arith_table table_for(const std::string& function, u64 X, u64 seed) {
    if (function == "mobius") return sieve_mobius(X);
    if (function == "liouville") return sieve_liouville(X);
    if (function == "unit") return unit_table(X);
    if (function == "squarefree") return table_from_multspec(mult_spec::squarefree(), X);
    if (function == "random") return table_from_multspec(mult_spec::random_disc(seed), X);
    throw config_error("unknown function kind: " + function);
}

/* ----- cache ----- */

static std::string cache_path(const std::string& dir, fn_kind kind, u64 X) {
    return dir + "/" + fn_kind_name(kind) + "_" + std::to_string(X) + ".gpat";
}

bool write_cache(const std::string& dir, const arith_table& t) {
    if (dir.empty()) return false;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::string path = cache_path(dir, t.kind, t.X);
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) return false;
    const char magic[4] = {'G', 'P', 'A', 'T'};
    std::uint32_t version = 1;
    std::uint8_t kind = (std::uint8_t)t.kind;
    u64 X = t.X;
    bool ok = std::fwrite(magic, 1, 4, f) == 4 &&
              std::fwrite(&version, 4, 1, f) == 1 &&
              std::fwrite(&kind, 1, 1, f) == 1 &&
              std::fwrite(&X, 8, 1, f) == 1;
    if (ok) {
        if (t.is_small())
            ok = std::fwrite(t.small.data() + 1, 1, X, f) == X;
        else
            ok = std::fwrite(t.wide.data() + 1, sizeof(cplx), X, f) == X;
    }
    std::fclose(f);
    return ok;
}

std::optional<arith_table> load_cache(const std::string& dir, fn_kind kind, u64 X) {
    if (dir.empty()) return std::nullopt;
    FILE* f = std::fopen(cache_path(dir, kind, X).c_str(), "rb");
    if (!f) return std::nullopt;
    char magic[4];
    std::uint32_t version = 0;
    std::uint8_t k = 0;
    u64 fx = 0;
    bool ok = std::fread(magic, 1, 4, f) == 4 && std::memcmp(magic, "GPAT", 4) == 0 &&
              std::fread(&version, 4, 1, f) == 1 && version == 1 &&
              std::fread(&k, 1, 1, f) == 1 && k == (std::uint8_t)kind &&
              std::fread(&fx, 8, 1, f) == 1 && fx == X;
    if (!ok) { std::fclose(f); return std::nullopt; }
    arith_table t;
    t.kind = kind;
    t.X = X;
    if (t.is_small()) {
        t.small.assign(X + 1, 0);
        ok = std::fread(t.small.data() + 1, 1, X, f) == X;
    } else {
        t.wide.assign(X + 1, cplx{0, 0});
        ok = std::fread(t.wide.data() + 1, sizeof(cplx), X, f) == X;
    }
    std::fclose(f);
    if (!ok) return std::nullopt;
    return t;
}

} // namespace gnap
