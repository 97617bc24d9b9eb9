#include "gnap/progressions.hpp"
#include <algorithm>
#include <numeric>

namespace gnap {

/* ----- specs ----- */

void progression_spec::validate(u64 X) const {
    if (a >= q) throw config_error("progression residue must satisfy a < q");
    if (std::gcd(a, q) != 1) throw config_error("progression residue must be reduced: gcd(a,q)=1");
    if (lo > hi) throw config_error("progression interval has lo > hi");
    if (hi > X) throw config_error("progression interval exceeds X");
}

double f_spec::recompute_T() const {
    kahan acc;
    for (const auto& e : entries) acc.add(double(e.prog.hi - e.prog.lo) / double(e.prog.q) + 1.0);
    return acc.value();
}

void f_spec::validate() const {
    for (const auto& e : entries) {
        e.prog.validate(X);
        if (e.prog.q < Q || e.prog.q >= 2 * Q)
            throw config_error("f_spec modulus outside the dyadic window [Q,2Q)");
    }
    if (T != recompute_T()) throw config_error("f_spec normalization T is stale");
}

f_spec f_spec::random(u64 Q, u64 X, int count, int s, u64 seed) {
    f_spec spec;
    spec.Q = Q;
    spec.X = X;
    rng r(task_seed(seed, "fspec"));
    for (int i = 0; i < count; i++) {
        f_entry e;
        e.prog.q = Q + r.next_u64() % Q;
        if (e.prog.q == 1) {
            e.prog.a = 0;
        } else {
            do e.prog.a = 1 + r.next_u64() % (e.prog.q - 1);
            while (std::gcd(e.prog.a, e.prog.q) != 1);
        }
        u64 margin = X / 4 + 1;
        e.prog.lo = r.next_u64() % margin;
        e.prog.hi = X - r.next_u64() % margin;
        std::vector<double> al(s);
        for (auto& x : al) x = r.next_double();
        e.phase = poly_phase::from_doubles(al);
        spec.entries.push_back(std::move(e));
    }
    spec.refresh();
    spec.validate();
    return spec;
}

/* ----- F ----- */

cplx eval_F(const f_spec& spec, u64 n) {
    cplx v = 0.0;
    for (const auto& e : spec.entries) {
        const auto& p = e.prog;
        if (n < p.lo || n > p.hi) continue;
        if (n % p.q != p.a) continue;
        v += e.phase.eval((n - p.a) / p.q);
    }
    return v;
}

std::vector<cplx> tabulate_F(const f_spec& spec) {
    std::vector<cplx> F(spec.X + 1, cplx(0.0));
    for (const auto& e : spec.entries) {
        const auto& p = e.prog;
        u64 n = p.lo + (p.a + p.q - p.lo % p.q) % p.q; // first n >= lo with n = a (q)
        for (; n <= p.hi; n += p.q) F[n] += e.phase.eval((n - p.a) / p.q);
    }
    return F;
}

double divisor_mass(const std::vector<cplx>& F_tab, u64 D) {
    kahan acc;
    for (u64 n = D; n < F_tab.size(); n += D) acc.add(std::abs(F_tab[n]));
    return acc.value();
}

/* ----- correlation sums ----- */

cplx correlation_sum(const arith_table& t, const progression_spec& p, const poly_phase& phi) {
    p.validate(p.hi); // residue/interval shape only
    if (p.hi > t.X) throw coverage_error("correlation interval exceeds the tabulated range");
    u64 start = std::max<u64>(p.lo, 1);
    u64 n = start + (p.a + p.q - start % p.q) % p.q;
    kahan_c acc;
    for (; n <= p.hi; n += p.q) acc.add(t.at(n) * phi.eval((n - p.a) / p.q));
    return acc.value();
}

// per-residue sums of f over [1,X] in one strided pass each
static std::vector<cplx> residue_sums(const arith_table& t, u64 q, u64 X) {
    std::vector<cplx> s(q, cplx(0.0));
    for (u64 a = 0; a < q; a++) {
        kahan_c acc;
        for (u64 n = (a == 0 ? q : a); n <= X; n += q) acc.add(t.at(n));
        s[a] = acc.value();
    }
    return s;
}

std::pair<double, u64> max_progression_sum(const arith_table& t, u64 q, u64 X) {
    auto s = residue_sums(t, q, X);
    double best = -1.0;
    u64 best_a = 0;
    for (u64 a = 0; a < q; a++) {
        if (std::gcd(a, q) != 1) continue;
        double v = std::abs(s[a]);
        if (v > best) { best = v; best_a = a; }
    }
    return {best < 0 ? 0.0 : best, best_a};
}

std::pair<double, u64> bv_discrepancy_at(const arith_table& t, u64 q, u64 X) {
    auto s = residue_sums(t, q, X);
    cplx coprime_total = 0.0;
    u64 phi_q = 0;
    for (u64 a = 0; a < q; a++)
        if (std::gcd(a, q) == 1) { coprime_total += s[a]; phi_q++; }
    cplx mean = coprime_total / double(phi_q);
    double best = -1.0;
    u64 best_a = 0;
    for (u64 a = 0; a < q; a++) {
        if (std::gcd(a, q) != 1) continue;
        double v = std::abs(s[a] - mean);
        if (v > best) { best = v; best_a = a; }
    }
    return {best < 0 ? 0.0 : best, best_a};
}

double bv_discrepancy(const arith_table& t, u64 q, u64 X) {
    return bv_discrepancy_at(t, q, X).first;
}

/* ----- sup over residue and phase ----- */

// |correlation| for one residue and one coefficient vector
static double corr_abs(const arith_table& t, u64 q, u64 a, u64 X, const poly_phase& phi) {
    progression_spec p{q, a, 0, X};
    return std::abs(correlation_sum(t, p, phi));
}

// Farey fractions c/d, d <= 20, in [0,1)
static const std::vector<double>& farey_grid() {
    static const std::vector<double> g = [] {
        std::vector<double> v;
        for (int d = 1; d <= 20; d++)
            for (int c = 0; c < d; c++)
                if (std::gcd(c, d) == 1) v.push_back(double(c) / double(d));
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }();
    return g;
}

sup_result sup_correlation(const arith_table& t, u64 q, u64 X, int s,
                           int restarts, u64 seed, double op_budget) {
    if (q > X) throw config_error("sup_correlation needs q <= X");
    if (s < 1) throw config_error("sup_correlation needs phase degree >= 1");
    if (restarts < 1) restarts = 1;
    if (X > t.X) throw coverage_error("sup_correlation range exceeds the tabulated range");

    const auto& g = farey_grid();
    const double len = double(X) / double(q) + 1.0;

    // candidate coefficient vectors: full grid product for s <= 2, a
    // deterministic subsample above that
    std::vector<std::vector<double>> cands;
    bool truncated = false;
    if (s == 1) {
        for (double x : g) cands.push_back({x});
    } else if (s == 2) {
        for (double x : g)
            for (double y : g) cands.push_back({x, y});
    } else {
        rng r(task_seed(seed, "supgrid"));
        std::size_t want = 20000;
        for (std::size_t i = 0; i < want; i++) {
            std::vector<double> v(s);
            for (auto& x : v) x = g[r.next_u64() % g.size()];
            cands.push_back(std::move(v));
        }
        cands.push_back(std::vector<double>(s, 0.0)); // keep the zero phase in the set
        truncated = true;
    }
    // trim the grid if it would blow the budget (keep the zero vector)
    double per_residue = double(cands.size()) * len;
    u64 phi_q = 0;
    for (u64 a = 0; a < q; a++)
        if (std::gcd(a, q) == 1) phi_q++;
    if (per_residue * double(phi_q) > op_budget) {
        std::size_t keep = std::max<std::size_t>(64, std::size_t(op_budget / (len * double(phi_q))));
        if (keep < cands.size()) {
            std::vector<std::vector<double>> slim;
            slim.push_back(std::vector<double>(s, 0.0));
            rng r(task_seed(seed, "suptrim"));
            for (std::size_t i = 1; i < keep; i++) slim.push_back(cands[r.next_u64() % cands.size()]);
            cands.swap(slim);
            truncated = true;
        }
    }

    sup_result best;
    best.budget_exhausted = truncated;
    for (u64 a = 0; a < q; a++) {
        if (std::gcd(a, q) != 1) continue;
        // cheap grid pass, keep the strongest few starts
        std::vector<std::pair<double, std::size_t>> scored;
        scored.reserve(cands.size());
        for (std::size_t i = 0; i < cands.size(); i++) {
            double v = corr_abs(t, q, a, X, poly_phase::from_doubles(cands[i]));
            scored.push_back({v, i});
        }
        std::size_t keep = std::min<std::size_t>(6, scored.size());
        std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                          [](const auto& x, const auto& y) { return x.first > y.first; });

        std::vector<std::vector<double>> starts;
        for (std::size_t i = 0; i < keep; i++) starts.push_back(cands[scored[i].second]);
        rng r(task_seed(seed, "supstart:" + std::to_string(a)));
        for (int i = 0; i < restarts; i++) {
            std::vector<double> v(s);
            for (auto& x : v) x = r.next_double();
            starts.push_back(std::move(v));
        }

        for (auto v : starts) {
            double cur = corr_abs(t, q, a, X, poly_phase::from_doubles(v));
            double w = 0.05;
            for (int pass = 0; pass < 6; pass++) {
                for (int i = 0; i < s; i++) {
                    double base = v[i], bx = base, bv = cur;
                    for (int j = -8; j <= 8; j++) {
                        if (j == 0) continue;
                        double x = base + w * double(j) / 8.0;
                        x -= std::floor(x);
                        v[i] = x;
                        double val = corr_abs(t, q, a, X, poly_phase::from_doubles(v));
                        if (val > bv) { bv = val; bx = x; }
                    }
                    v[i] = bx;
                    cur = bv;
                }
                w *= 0.45;
            }
            if (cur > best.value) {
                best.value = cur;
                best.a = a;
                best.phase = poly_phase::from_doubles(v);
            }
        }
    }
    return best;
}

/* ----- exceptional scan ----- */

bv_report exceptional_scan(const arith_table& t, u64 Q, u64 X, int phi_source,
                           double eps, int restarts, u64 seed, int threads,
                           bool full_range) {
    if (eps <= 0.0) throw config_error("exceptional_scan needs eps > 0");
    if (10 * Q * Q > X) throw hypothesis_error("10 Q^2 <= X violated");
    if (X > t.X) throw coverage_error("scan range exceeds the tabulated range");

    std::vector<u64> moduli;
    for (u64 q = full_range ? 1 : Q; q < 2 * Q; q++) moduli.push_back(q);
    double threshold = eps * double(X) / double(Q);

    std::vector<bv_row> rows(moduli.size());
    parallel_for(moduli.size(), threads, [&](std::size_t i) {
        u64 q = moduli[i];
        bv_row row;
        row.q = q;
        row.threshold = threshold;
        if (phi_source < 0) {
            auto [v, a] = bv_discrepancy_at(t, q, X);
            row.value = v;
            row.a = a;
        } else if (phi_source == 0) {
            auto [v, a] = max_progression_sum(t, q, X);
            row.value = v;
            row.a = a;
        } else {
            auto s = sup_correlation(t, q, X, phi_source, restarts,
                                     task_seed(seed, "scan:" + std::to_string(q)));
            row.value = s.value;
            row.a = s.a;
            for (u64 c : s.phase.alpha) row.alpha.push_back(frac64_to_double(c));
        }
        row.exceptional = row.value >= threshold;
        rows[i] = std::move(row);
    });

    bv_report rep;
    rep.rows = std::move(rows);
    kahan mean;
    for (const auto& r : rep.rows) {
        if (r.exceptional) rep.exceptional_count++;
        mean.add(r.value);
        rep.max_value = std::max(rep.max_value, r.value);
    }
    rep.mean_value = rep.rows.empty() ? 0.0 : mean.value() / double(rep.rows.size());
    return rep;
}

} // namespace gnap
