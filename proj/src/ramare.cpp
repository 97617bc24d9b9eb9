#include "gnap/ramare.hpp"
#include <algorithm>
#include <cmath>
#include <numeric>

namespace gnap {

/* ----- prime window ----- */

void ramare_window::validate() const {
    if (!(Y >= 2.0) || !(Y < Z)) throw config_error("ramare window needs 2 <= Y < Z");
}

std::vector<u64> window_primes(const ramare_window& w) {
    w.validate();
    u64 limit = (u64)std::ceil(w.Z);
    if (limit > 0) limit--; // primes strictly below Z
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<char> comp(limit + 1, 0);
    for (u64 p = 2; p * p <= limit; p++)
        if (!comp[p])
            for (u64 m = p * p; m <= limit; m += p) comp[m] = 1;
    for (u64 p = 2; p <= limit; p++)
        if (!comp[p] && w.contains(p)) out.push_back(p);
    return out;
}

rational ramare_weight(u64 n, const ramare_window& w, const spf_table& spf) {
    i64 c = 0;
    for (auto [p, e] : factorize(n, spf))
        if (w.contains(p)) c++;
    return {1, c + 1};
}

int musq_window(u64 n, const ramare_window& w, const spf_table& spf) {
    for (auto [p, e] : factorize(n, spf))
        if (e >= 2 && w.contains(p)) return 0;
    return 1;
}

identity_check ramare_identity_check(u64 n, const ramare_window& w, const spf_table& spf) {
    identity_check r;
    if (!musq_window(n, w, spf)) return r;
    r.applicable = true;
    std::vector<u64> wp;
    for (auto [p, e] : factorize(n, spf))
        if (w.contains(p)) wp.push_back(p);
    r.expected = wp.empty() ? 0 : 1;
    rational lhs{0, 1};
    for (u64 p : wp) lhs = lhs + ramare_weight(n / p, w, spf);
    r.lhs = lhs;
    r.pass = (lhs == rational{r.expected, 1});
    return r;
}

/* ----- convolution complement ----- */

std::pair<mult_spec, g_spec> decompose(const mult_spec& f) {
    mult_spec fp;
    fp.completely_multiplicative = true;
    fp.name = f.name + "'";
    fp.at = [base = f.at](u64 p, int e) {
        cplx v = base(p, 1), r = 1.0;
        for (int i = 0; i < e; i++) r *= v;
        return r;
    };
    g_spec g;
    g.name = "g[" + f.name + "]";
    g.at = [base = f.at](u64 p, int e) {
        // triangular solve of f(p^k) = sum_j f(p)^j g(p^(k-j))
        std::vector<cplx> gv(e + 1);
        gv[0] = 1.0;
        cplx fp1 = base(p, 1);
        for (int k = 1; k <= e; k++) {
            cplx acc = base(p, k);
            cplx pw = 1.0;
            for (int j = 1; j <= k; j++) {
                pw *= fp1;
                acc -= pw * gv[k - j];
            }
            gv[k] = acc;
        }
        return gv[e];
    };
    return {std::move(fp), std::move(g)};
}

double verify_convolution(const arith_table& f_tab, const arith_table& fprime_tab,
                          const g_spec& g, u64 X) {
    if (f_tab.X < X || fprime_tab.X < X)
        throw coverage_error("verify_convolution tables do not cover [1,X]");
    spf_table spf = sieve_spf(X);
    std::vector<cplx> conv(X + 1, cplx(0.0));
    for (u64 l = 1; l <= X; l++) {
        cplx gval = 1.0;
        if (l > 1) {
            bool squarefull = true;
            auto fac = factorize(l, spf);
            for (auto [p, e] : fac)
                if (e < 2) { squarefull = false; break; }
            if (!squarefull) continue; // g(p) = 0 kills these
            for (auto [p, e] : fac) gval *= g.at(p, e);
            if (gval == cplx(0.0)) continue;
        }
        for (u64 m = l; m <= X; m += l) conv[m] += gval * fprime_tab.at(m / l);
    }
    double err = 0.0;
    for (u64 n = 1; n <= X; n++) err = std::max(err, std::abs(f_tab.at(n) - conv[n]));
    return err;
}

g_sums g_partial_sums(const g_spec& g, u64 N, u64 cap) {
    if (N < 2) throw config_error("g_partial_sums needs N >= 2");
    if (cap == 0) {
        if (N > 3000000000ull) throw capacity_error("g_partial_sums default cap N^2 overflows");
        cap = N * N;
    }
    u64 proot = (u64)std::sqrt((double)cap);
    while (proot * proot > cap) proot--;
    while ((proot + 1) * (proot + 1) <= cap) proot++;
    std::vector<char> comp(proot + 1, 0);
    std::vector<u64> primes;
    for (u64 p = 2; p <= proot; p++) {
        if (comp[p]) continue;
        primes.push_back(p);
        for (u64 m = p * p; m <= proot; m += p) comp[m] = 1;
    }

    kahan head, tail;
    auto record = [&](u64 n, double a) {
        if (n <= N) head.add(a);
        if (n >= N) tail.add(a / double(n));
    };
    record(1, 1.0);
    // squarefull integers: every prime exponent >= 2, built ascending
    auto rec = [&](auto&& self, std::size_t idx, u64 cur, double absg) -> void {
        for (std::size_t i = idx; i < primes.size(); i++) {
            u64 p = primes[i];
            if (cur > cap / (p * p)) break;
            u64 v = cur * p * p;
            int e = 2;
            while (true) {
                double a = absg * std::abs(g.at(p, e));
                if (a > 0.0) {
                    record(v, a);
                    self(self, i + 1, v, a);
                }
                if (v > cap / p) break;
                v *= p;
                e++;
            }
        }
    };
    rec(rec, 0, 1, 1.0);
    return {head.value(), tail.value(), cap};
}

/* ----- windowed-coprime progression count ----- */

coprime_count coprime_window_count(const progression_spec& p, const ramare_window& w) {
    p.validate(p.hi);
    auto primes = window_primes(w);
    coprime_count out;
    out.progression_count = double(p.hi - p.lo) / double(p.q) + 1.0;
    double mert = out.progression_count;
    for (u64 pr : primes)
        if (p.q % pr != 0) mert *= 1.0 - 1.0 / double(pr);
    out.mertens_prediction = mert;

    u64 start = std::max<u64>(p.lo, 0);
    u64 n0 = start + (p.a + p.q - start % p.q) % p.q;
    if (n0 > p.hi) return out;
    u64 J = (p.hi - n0) / p.q + 1;
    std::vector<char> marked(J, 0);
    for (u64 pr : primes) {
        if (p.q % pr == 0) continue; // no progression element is divisible by pr
        u64 inv = mod_inverse(p.q % pr, pr);
        u64 j0 = ((pr - n0 % pr) % pr) * inv % pr;
        for (u64 j = j0; j < J; j += pr) marked[j] = 1;
    }
    u64 cnt = 0;
    for (u64 j = 0; j < J; j++)
        if (!marked[j]) cnt++;
    out.count = cnt;
    return out;
}

/* ----- partition of sum f F ----- */

sigma_partition_result sigma_partition(const arith_table& f_tab, const f_spec& spec,
                                       const ramare_window& w, int threads) {
    w.validate();
    spec.validate();
    u64 X = spec.X;
    if (f_tab.X < X) throw coverage_error("sigma_partition table does not cover the f_spec range");
    std::vector<cplx> F = tabulate_F(spec);
    spf_table spf = sieve_spf(X);

    sigma_partition_result out;

    // main pass over n, fixed block split so the reduction order does not
    // depend on the thread count
    const std::size_t B = 64;
    struct block_acc {
        kahan_c total, musq0, coprime, sigma;
        kahan absf;
    };
    std::vector<block_acc> blocks(B);
    parallel_for(B, threads, [&](std::size_t b) {
        u64 lo = 1 + X * b / B, hi = X * (b + 1) / B;
        block_acc acc;
        for (u64 n = lo; n <= hi; n++) {
            cplx fF = f_tab.at(n) * F[n];
            acc.total.add(fF);
            acc.absf.add(std::abs(F[n]));
            auto fac = factorize(n, spf);
            bool musq = true, has_wp = false;
            for (auto [pp, e] : fac) {
                if (!w.contains(pp)) continue;
                has_wp = true;
                if (e >= 2) { musq = false; break; }
            }
            if (!musq) {
                acc.musq0.add(fF);
            } else if (!has_wp) {
                acc.coprime.add(fF);
            } else {
                rational inner{0, 1};
                for (auto [pp, e] : fac)
                    if (w.contains(pp)) inner = inner + ramare_weight(n / pp, w, spf);
                acc.sigma.add(fF * inner.to_double());
            }
        }
        blocks[b] = acc;
    });
    kahan_c total, musq0, coprime, sigma;
    kahan absf;
    for (const auto& b : blocks) {
        total.add(b.total.value());
        musq0.add(b.musq0.value());
        coprime.add(b.coprime.value());
        sigma.add(b.sigma.value());
        absf.add(b.absf.value());
    }
    out.total = total.value();
    out.part_musq_zero = musq0.value();
    out.part_coprime = coprime.value();
    out.part_sigma = sigma.value();
    out.abs_F_sum = absf.value();
    out.residual = std::abs(out.total - (out.part_musq_zero + out.part_coprime + out.part_sigma));

    // (p,m) reordering of the main term and its relaxations
    auto primes = window_primes(w);
    while (!primes.empty() && primes.back() > X) primes.pop_back();
    u64 Mmax = primes.empty() ? 0 : X / primes.front();
    std::vector<double> wv(Mmax + 1, 1.0);
    std::vector<char> musq_m(Mmax + 1, 1);
    for (u64 m = 1; m <= Mmax; m++) {
        wv[m] = ramare_weight(m, w, spf).to_double();
        musq_m[m] = (char)musq_window(m, w, spf);
    }
    kahan_c mroute, sprime, rmusq, rpm;
    for (u64 p : primes) {
        cplx fp = f_tab.at(p);
        for (u64 m = 1; m <= X / p; m++) {
            cplx term = wv[m] * fp * f_tab.at(m) * F[p * m];
            sprime.add(term);
            if (!musq_m[m]) rmusq.add(term);
            else if (m % p == 0) rpm.add(term);
            else mroute.add(term);
        }
    }
    out.sigma_mroute = mroute.value();
    out.sigma_prime = sprime.value();
    out.rem_musq = rmusq.value();
    out.rem_pm = rpm.value();

    for (double P = w.Y; P < w.Z; P *= 2.0) {
        double ph = std::min(2.0 * P, w.Z);
        kahan_c s;
        for (u64 p : primes) {
            if (double(p) < P || double(p) >= ph) continue;
            cplx fp = f_tab.at(p);
            for (u64 m = 1; m <= X / p; m++)
                s.add(wv[m] * fp * f_tab.at(m) * F[p * m]);
        }
        out.slices.push_back({P, s.value()});
    }
    return out;
}

cs_gap cauchy_schwarz_gap(const arith_table& f_tab, const f_spec& spec,
                          const ramare_window& w, double P) {
    w.validate();
    spec.validate();
    u64 X = spec.X;
    if (f_tab.X < X) throw coverage_error("cauchy_schwarz_gap table does not cover the f_spec range");
    if (!(P > 0.0)) throw config_error("cauchy_schwarz_gap needs P > 0");
    std::vector<cplx> F = tabulate_F(spec);

    double pl = std::max(P, w.Y), ph = std::min(2.0 * P, w.Z);
    std::vector<u64> slice;
    for (u64 p : window_primes(w))
        if (double(p) >= pl && double(p) < ph && p <= X) slice.push_back(p);

    cs_gap out;
    u64 Mmax = (u64)(double(X) / P);
    Mmax = std::min<u64>(Mmax, X);
    spf_table spf = sieve_spf(std::max<u64>(Mmax, 1));

    // lhs: the dyadic slice of sigma_prime
    kahan_c sp;
    for (u64 p : slice) {
        cplx fp = f_tab.at(p);
        for (u64 m = 1; m <= X / p; m++)
            sp.add(ramare_weight(m, w, spf).to_double() * fp * f_tab.at(m) * F[p * m]);
    }
    out.lhs = std::norm(sp.value());

    // rhs: (X/P) sum_m |inner prime sum|^2
    kahan acc;
    for (u64 m = 1; m <= Mmax; m++) {
        kahan_c inner;
        for (u64 p : slice) {
            if (p > X / m) break;
            inner.add(f_tab.at(p) * F[p * m]);
        }
        acc.add(std::norm(inner.value()));
    }
    out.rhs = double(X) / P * acc.value();
    out.ok = out.lhs <= out.rhs * (1.0 + 1e-9) + 1e-9;
    out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
    return out;
}

} // namespace gnap
