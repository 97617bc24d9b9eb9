#include "gnap/phases.hpp"

namespace gnap {

poly_phase poly_phase::from_doubles(const std::vector<double>& a, double a0) {
    poly_phase p;
    p.alpha.reserve(a.size());
    for (double x : a) p.alpha.push_back(frac64_from_double(x));
    p.alpha0 = frac64_from_double(a0);
    return p;
}

poly_phase poly_phase::scaled(u64 m) const {
    poly_phase p = *this;
    for (u64& a : p.alpha) a *= m;
    p.alpha0 *= m;
    return p;
}

std::vector<cplx> eval_phase(const poly_phase& phi, u64 N) {
    std::vector<cplx> out;
    out.reserve(N);
    for (u64 n = 0; n < N; n++) out.push_back(phi.eval(n));
    return out;
}

cplx weyl_sum(const poly_phase& phi, u64 N) {
    if (N == 0) throw domain_error("weyl_sum: empty range");
    kahan_c s;
    for (u64 n = 0; n < N; n++) s.add(phi.eval(n));
    return s.value() / double(N);
}

double smoothness_norm(const poly_phase& phi, u64 N) {
    double best = 0.0, scale = 1.0;
    for (int i = 0; i < phi.degree(); i++) {
        scale *= double(N);
        best = std::max(best, scale * frac64_dist(phi.alpha[i]));
    }
    return best;
}

static double residual_at(const poly_phase& phi, u64 N, u64 r) {
    double worst = 0.0, scale = 1.0;
    for (int i = 0; i < phi.degree(); i++) {
        scale *= double(N);
        worst = std::max(worst, scale * frac64_dist(phi.alpha[i] * r));
    }
    return worst;
}

dio_approx best_denominator(const poly_phase& phi, u64 N, u64 r_max) {
    if (phi.degree() == 0 || r_max == 0)
        throw domain_error("best_denominator: need a degree and a positive range");
    dio_approx best{1, residual_at(phi, N, 1)};
    for (u64 r = 2; r <= r_max; r++) {
        double v = residual_at(phi, N, r);
        if (v < best.residual) best = {r, v};
    }
    return best;
}

dio_approx best_denominator_cf(u64 alpha, u64 N, u64 r_max) {
    // continued fraction of alpha / 2^64; the minimum of ||r a|| over
    // r <= r_max sits at a convergent denominator
    poly_phase lin;
    lin.alpha = {alpha};
    dio_approx best{1, residual_at(lin, N, 1)};
    // euclid on (alpha, 2^64) with denominators tracked
    __uint128_t a = alpha, b = (__uint128_t)1 << 64;
    u64 q_prev = 0, q_cur = 1;
    while (a > 0) {
        u64 quot = (u64)(b / a);
        __uint128_t rem = b % a;
        // next convergent denominator
        __uint128_t q_next128 = (__uint128_t)quot * q_cur + q_prev;
        if (q_next128 > r_max) break;
        u64 q_next = (u64)q_next128;
        double v = residual_at(lin, N, q_next);
        if (v < best.residual) best = {q_next, v};
        q_prev = q_cur;
        q_cur = q_next;
        b = a;
        a = rem;
    }
    return best;
}

/* ----- total equidistribution ----- */

equidist_report equidist_defect(const poly_phase& phi, u64 N, double delta,
                                int threads, double op_budget) {
    if (N == 0) throw domain_error("equidist_defect: empty range");
    if (!(delta > 0.0 && delta < 1.0)) throw domain_error("equidist_defect: delta must lie in (0,1)");
    u64 D = (u64)std::ceil(1.0 / delta);      // max step
    u64 M = (u64)std::ceil(1.0 / delta);      // max frequency
    u64 Lmin = std::max<u64>(1, (u64)std::ceil(delta * double(N)));

    // any window of >= Lmin terms splits into blocks of [Lmin, 2 Lmin)
    // terms and its mean is dominated by one of them, so scanning block
    // lengths alone realizes the same supremum
    double est = 0.0;
    for (u64 d = 1; d <= D; d++) {
        u64 L = (N + d - 1) / d;
        if (L < Lmin) continue;
        est += double(M) * double(L - Lmin + 1) * double(std::min<u64>(Lmin, L));
    }
    if (est > op_budget) throw cost_error("equidist_defect: scan size exceeds the operation budget");

    struct line_best {
        double defect = -1.0;
        u64 start = 0, step = 1, length = 0, freq = 1;
    };
    // tasks in canonical (m, d) order so the serial reduction below keeps
    // first-found-wins semantics regardless of the thread count
    std::vector<std::pair<u64, u64>> tasks;
    for (u64 m = 1; m <= M; m++)
        for (u64 d = 1; d <= D; d++) tasks.push_back({m, d});
    std::vector<line_best> results(tasks.size());

    parallel_for(tasks.size(), threads, [&](std::size_t ti) {
        auto [m, d] = tasks[ti];
        poly_phase mphi = phi.scaled(m);
        line_best best;
        std::vector<cplx> prefix;
        for (u64 b = 0; b < d; b++) {
            u64 L = b < N ? (N - b + d - 1) / d : 0;
            if (L < Lmin) continue;
            prefix.assign(L + 1, cplx{0, 0});
            kahan_c acc;
            for (u64 j = 0; j < L; j++) {
                acc.add(mphi.eval(b + j * d));
                prefix[j + 1] = acc.value();
            }
            u64 len_hi = std::min<u64>(2 * Lmin - 1, L);
            for (u64 j0 = 0; j0 + Lmin <= L; j0++) {
                for (u64 len = Lmin; len <= len_hi && j0 + len <= L; len++) {
                    double v = std::abs(prefix[j0 + len] - prefix[j0]) / double(len);
                    if (v > best.defect) best = {v, b + j0 * d, d, len, m};
                }
            }
        }
        results[ti] = best;
    });

    equidist_report rep;
    rep.delta = delta;
    rep.defect = 0.0;
    for (const line_best& b : results) {
        if (b.defect > rep.defect) {
            rep.defect = b.defect;
            rep.witness_start = b.start;
            rep.witness_step = b.step;
            rep.witness_length = b.length;
            rep.witness_freq = b.freq;
        }
    }
    rep.equidistributed = rep.defect <= delta;
    return rep;
}

} // namespace gnap
