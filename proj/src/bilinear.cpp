#include "gnap/bilinear.hpp"
#include <algorithm>
#include <numeric>

namespace gnap {

/* ----- config ----- */

lattice_interval typeII_config::interval(u64 k, u64 kp) const {
    lattice_interval iv = I ? I(k, kp) : lattice_interval{1, L};
    if (iv.hi > L) iv.hi = L;
    return iv;
}

void typeII_config::validate() const {
    if (K < 1) throw config_error("typeII needs K >= 1");
    if (L < 1) throw config_error("typeII needs L >= 1");
    if (!(delta > 0.0 && delta < 0.5)) throw config_error("typeII needs delta in (0, 1/2)");
    if (10 * Q * Q > L) throw hypothesis_error("10 Q^2 <= L violated");
}

/* ----- direct route ----- */

cplx typeII_inner_direct(const typeII_config& cfg, const f_spec& spec,
                         const std::vector<cplx>& F_tab, u64 k, u64 kp) {
    (void)spec;
    lattice_interval iv = cfg.interval(k, kp);
    kahan_c acc;
    for (u64 l = iv.lo; l <= iv.hi && l >= iv.lo; l++)
        acc.add(F_tab[k * l] * std::conj(F_tab[kp * l]));
    return acc.value();
}

typeII_result typeII_sum(const typeII_config& cfg, const f_spec& spec,
                         const std::vector<cplx>& F_tab, int threads) {
    cfg.validate();
    if (F_tab.size() < 4 * cfg.K * cfg.L + 1)
        throw coverage_error("typeII needs F tabulated over [0, 4KL]");
    std::vector<double> per_k(cfg.K, 0.0);
    parallel_for(cfg.K, threads, [&](std::size_t i) {
        u64 k = cfg.K + i;
        kahan row;
        for (u64 kp = cfg.K; kp < 2 * cfg.K; kp++)
            row.add(std::abs(typeII_inner_direct(cfg, spec, F_tab, k, kp)));
        per_k[i] = row.value();
    });
    kahan total;
    for (double v : per_k) total.add(v);
    typeII_result out;
    out.value = total.value();
    out.normalized = out.value / (double(cfg.K) * double(cfg.K) * double(cfg.L));
    out.exceeds = out.normalized >= cfg.delta;
    return out;
}

/* ----- congruence merge ----- */

// k l = a (mod q) reduced to l = r (mod m); false when unsolvable
static bool reduce_congruence(u64 k, u64 q, u64 a, u64& m, u64& r) {
    if (q == 1) { m = 1; r = 0; return true; }
    u64 g = std::gcd(k % q, q); // gcd(0,q) = q covers k = 0 (mod q)
    if (a % g != 0) return false;
    m = q / g;
    if (m == 1) { r = 0; return true; }
    u64 kk = (k % q) / g, aa = (a % q) / g;
    r = aa % m * mod_inverse(kk % m, m) % m;
    return true;
}

std::optional<merged_congruence> congruence_merge(u64 k, u64 kp, u64 q, u64 qp,
                                                 u64 a_q, u64 a_qp) {
    u64 m1, r1, m2, r2;
    if (!reduce_congruence(k, q, a_q, m1, r1)) return std::nullopt;
    if (!reduce_congruence(kp, qp, a_qp, m2, r2)) return std::nullopt;
    u64 d = std::gcd(m1, m2);
    u64 diff = r1 >= r2 ? r1 - r2 : r2 - r1;
    if (diff % d != 0) return std::nullopt;
    u64 lcm = m1 / d * m2;
    // x = r1 + m1 t with t = (r2 - r1)/d * inv(m1/d) (mod m2/d)
    u64 md = m2 / d;
    u64 t = 0;
    if (md > 1) {
        i64 quot = ((i64)r2 - (i64)r1) / (i64)d; // exact: d | (r2 - r1)
        i64 qm = quot % (i64)md;
        if (qm < 0) qm += (i64)md;
        t = (u64)qm * mod_inverse((m1 / d) % md, md) % md;
    }
    merged_congruence out;
    out.modulus = lcm;
    out.residue = (r1 + m1 * t) % lcm;
    return out;
}

/* ----- composed phase ----- */

poly_phase composed_phase(const poly_phase& phi, u64 scale, u64 shift) {
    int s = phi.degree();
    // pascal triangle, wrapping u64 (exact mod 2^64)
    std::vector<std::vector<u64>> C(s + 1, std::vector<u64>(s + 1, 0));
    for (int j = 0; j <= s; j++) {
        C[j][0] = 1;
        for (int i = 1; i <= j; i++) C[j][i] = C[j - 1][i - 1] + (i <= j - 1 ? C[j - 1][i] : 0);
    }
    auto upow = [](u64 b, int e) {
        u64 r = 1;
        for (int i = 0; i < e; i++) r *= b;
        return r;
    };
    poly_phase out;
    out.alpha.assign(s, 0);
    out.alpha0 = phi.alpha0;
    for (int j = 1; j <= s; j++) {
        u64 aj = phi.alpha[j - 1];
        out.alpha0 += upow(shift, j) * aj;
        for (int i = 1; i <= j; i++)
            out.alpha[i - 1] += C[j][i] * upow(scale, i) * upow(shift, j - i) * aj;
    }
    return out;
}

/* ----- merged route ----- */

// intersect l-constraints: iv, and k l in [lo,hi]
static void clamp_scaled(u64 k, u64 lo, u64 hi, u64& llo, u64& lhi) {
    u64 a = (lo + k - 1) / k; // ceil(lo/k)
    u64 b = hi / k;
    llo = std::max(llo, a);
    lhi = std::min(lhi, b);
}

cplx typeII_inner_merged(const typeII_config& cfg, const f_spec& spec, u64 k, u64 kp) {
    lattice_interval iv = cfg.interval(k, kp);
    kahan_c acc;
    for (const auto& eq : spec.entries) {
        for (const auto& eqp : spec.entries) {
            const auto& p = eq.prog;
            const auto& pp = eqp.prog;
            auto merged = congruence_merge(k, kp, p.q, pp.q, p.a, pp.a);
            if (!merged) continue;
            u64 M = merged->modulus, a = merged->residue;
            // b = (k a - a_q)/q is a nonnegative integer whenever the merge
            // succeeded with reduced residues
            u64 b = (k * a - p.a) / p.q;
            u64 bp = (kp * a - pp.a) / pp.q;
            poly_phase cq = composed_phase(eq.phase, k * (M / p.q), b);
            poly_phase cqp = composed_phase(eqp.phase, kp * (M / pp.q), bp);
            u64 llo = iv.lo, lhi = iv.hi;
            clamp_scaled(k, p.lo, p.hi, llo, lhi);
            clamp_scaled(kp, pp.lo, pp.hi, llo, lhi);
            if (llo > lhi) continue;
            // l = a + M t
            u64 t0 = llo <= a ? 0 : (llo - a + M - 1) / M;
            if (a + M * t0 > lhi) continue;
            u64 t1 = (lhi - a) / M;
            kahan_c inner;
            for (u64 t = t0; t <= t1; t++) {
                u64 fr = cq.eval_frac(t) - cqp.eval_frac(t);
                inner.add(unit_phase(fr));
            }
            acc.add(inner.value());
        }
    }
    return acc.value();
}

/* ----- lcm statistics ----- */

u64 sigma_D(u64 q, double D) {
    u64 cnt = 0;
    for (u64 d = 1; d * d <= q; d++) {
        if (q % d != 0) continue;
        u64 e = q / d;
        if (double(d) >= D && double(d) <= 8.0 * D) cnt++;
        if (e != d && double(e) >= D && double(e) <= 8.0 * D) cnt++;
    }
    return cnt;
}

u64 sigma_D_second_moment(u64 Q, double D) {
    u64 acc = 0;
    for (u64 q = Q; q < 2 * Q; q++) {
        u64 s = sigma_D(q, D);
        acc += s * s;
    }
    return acc;
}

u64 lcm_stats_result::mult_of(u64 q, u64 r) const {
    if (q < Q || q >= 2 * Q || r < R || r >= 2 * R) return 0;
    u64 key = (q - Q) * R + (r - R);
    auto it = std::lower_bound(mult_key.begin(), mult_key.end(), key);
    if (it == mult_key.end() || *it != key) return 0;
    return mult_cnt[it - mult_key.begin()];
}

void lcm_stats_result::entry(std::size_t i, u64& q, u64& r, u64& m) const {
    q = Q + mult_key[i] / R;
    r = R + mult_key[i] % R;
    m = mult_cnt[i];
}

u64 lcm_stats_result::tail(u64 m0) const {
    u64 acc = 0;
    for (auto [m, pairs] : histogram)
        if (m >= m0) acc += pairs;
    return acc;
}

lcm_stats_result lcm_stats(u64 Q, u64 R) {
    if (Q < 1 || R < Q || R > 4 * Q * Q) throw config_error("lcm_stats needs Q <= R <= 4Q^2");
    if (Q > 10000) throw cost_error("lcm_stats pair enumeration capped at Q = 1e4");
    lcm_stats_result out;
    out.Q = Q;
    out.R = R;
    out.D = double(Q) * double(Q) / (2.0 * double(R));

    // pass 1: count the pair set
    u64 count = 0;
    for (u64 q = Q; q < 2 * Q; q++)
        for (u64 qp = Q; qp < 2 * Q; qp++) {
            u64 l = q / std::gcd(q, qp) * qp;
            if (l >= R && l < 2 * R) count++;
        }
    out.pair_count = count;
    if (count > 30000000ull) throw cost_error("lcm_stats pair set exceeds the memory budget");

    // pass 2: multiplicities via a sorted packed key array
    std::vector<u64> keys;
    keys.reserve(count);
    for (u64 q = Q; q < 2 * Q; q++)
        for (u64 qp = Q; qp < 2 * Q; qp++) {
            u64 l = q / std::gcd(q, qp) * qp;
            if (l >= R && l < 2 * R) keys.push_back((q - Q) * R + (l - R));
        }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) j++;
        out.mult_key.push_back(keys[i]);
        out.mult_cnt.push_back(j - i);
        i = j;
    }
    // histogram over pairs: each (q,q') contributes its own m_q([q,q'])
    for (std::size_t i = 0; i < out.mult_cnt.size(); i++)
        out.histogram[out.mult_cnt[i]] += out.mult_cnt[i];

    out.sigma.resize(Q);
    for (u64 q = Q; q < 2 * Q; q++) out.sigma[q - Q] = sigma_D(q, out.D);
    return out;
}

} // namespace gnap
