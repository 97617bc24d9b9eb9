#include "gnap/gowers.hpp"
#include "gnap/fft.hpp"
#include <bit>

namespace gnap {

const char* strategy_name(gowers_strategy s) {
    switch (s) {
        case gowers_strategy::naive: return "naive";
        case gowers_strategy::recursive_fft: return "recursive_fft";
        case gowers_strategy::u1_mean: return "u1_mean";
        default: return "auto";
    }
}

namespace {

double box_sum_1(const std::vector<cplx>& v) {
    kahan_c s;
    for (cplx z : v) s.add(z);
    return std::norm(s.value());
}

// S_2 via a power-of-two transform large enough that no box wraps
double box_sum_2_fft(const std::vector<cplx>& v) {
    std::size_t m = next_pow2(3 * v.size());
    std::vector<cplx> a(m, cplx{0, 0});
    std::copy(v.begin(), v.end(), a.begin());
    fft_pow2(a.data(), m, -1);
    kahan s;
    for (cplx z : a) {
        double q = std::norm(z);
        s.add(q * q);
    }
    return s.value() / double(m);
}

std::vector<cplx> derivative_overlap(const std::vector<cplx>& v, std::size_t h) {
    std::vector<cplx> w(v.size() - h);
    for (std::size_t i = 0; i + h < v.size(); i++) w[i] = v[i + h] * std::conj(v[i]);
    return w;
}

double box_sum_rec(const std::vector<cplx>& v, int k) {
    if (v.empty()) return 0.0;
    if (k == 1) return box_sum_1(v);
    if (k == 2) return box_sum_2_fft(v);
    // S(D_{-h} f) = S(D_h f): negative shifts mirror the positive ones
    kahan s;
    s.add(box_sum_rec(derivative_overlap(v, 0), k - 1));
    for (std::size_t h = 1; h < v.size(); h++)
        s.add(2.0 * box_sum_rec(derivative_overlap(v, h), k - 1));
    return s.value();
}

// as above but the outer shift loop fans out across threads; partial
// results land in per-shift slots and are reduced in a fixed order
double box_sum_rec_parallel(const std::vector<cplx>& v, int k, int threads) {
    if (k <= 2 || threads <= 1 || v.size() < 64) return box_sum_rec(v, k);
    std::vector<double> slot(v.size());
    parallel_for(v.size(), threads, [&](std::size_t h) {
        slot[h] = (h == 0 ? 1.0 : 2.0) * box_sum_rec(derivative_overlap(v, h), k - 1);
    });
    kahan s;
    for (double x : slot) s.add(x);
    return s.value();
}

// direct enumeration of integer boxes with every vertex in the support
double box_sum_naive(const std::vector<cplx>& v, int k) {
    struct walker {
        const std::vector<cplx>& f;
        i64 Y;
        int k;
        std::vector<i64> shift;
        double total = 0.0;
        walker(const std::vector<cplx>& fv, int kk) : f(fv), Y((i64)fv.size() - 1), k(kk), shift(1, 0) {}
        void go(int depth, i64 neg, i64 pos) {
            if (depth == k) {
                for (i64 n = -neg; n <= Y - pos; n++) {
                    cplx prod{1, 0};
                    for (std::size_t m = 0; m < shift.size(); m++) {
                        cplx z = f[(std::size_t)(n + shift[m])];
                        prod *= (std::popcount(m) & 1) ? std::conj(z) : z;
                    }
                    total += prod.real();
                }
                return;
            }
            std::size_t half = shift.size();
            shift.resize(2 * half);
            for (i64 h = -Y; h <= Y; h++) {
                i64 nn = neg + std::min<i64>(h, 0), pp = pos + std::max<i64>(h, 0);
                if (pp - nn > Y) continue;
                for (std::size_t m = 0; m < half; m++) shift[half + m] = shift[m] + h;
                go(depth + 1, nn, pp);
            }
            shift.resize(half);
        }
    };
    if (v.empty()) return 0.0;
    walker w(v, k);
    w.go(0, 0, 0);
    return w.total;
}

double estimated_cost(const std::vector<cplx>& v, int k, gowers_strategy s) {
    double len = double(v.size());
    if (s == gowers_strategy::naive) return std::pow(len, double(k + 1));
    if (k <= 2) return 64.0 * len;
    // one fft per shift chain of depth k-2
    return std::pow(2.0 * len, double(k - 2)) * 64.0 * len;
}

} // namespace

gowers_result gowers_norm(const complex_seq& f, int k, gowers_strategy strategy,
                          int threads, double op_budget) {
    if (k < 1 || k > 6) throw domain_error("gowers_norm: k must be in [1,6]");
    if (f.values.empty()) throw domain_error("gowers_norm: empty sequence");
    if (strategy == gowers_strategy::auto_select)
        strategy = k == 1 ? gowers_strategy::u1_mean
                          : gowers_strategy::recursive_fft;
    if (strategy == gowers_strategy::u1_mean && k != 1)
        throw config_error("u1_mean strategy only applies to k = 1");
    if (estimated_cost(f.values, k, strategy) > op_budget)
        throw cost_error("gowers_norm: estimated cost exceeds the operation budget");

    std::size_t len = f.values.size();
    double Sf, Sind;
    if (strategy == gowers_strategy::u1_mean) {
        Sf = box_sum_1(f.values);
        Sind = double(len) * double(len);
    } else if (strategy == gowers_strategy::naive) {
        Sf = box_sum_naive(f.values, k);
        Sind = box_sum_naive(std::vector<cplx>(len, cplx{1, 0}), k);
    } else {
        Sf = box_sum_rec_parallel(f.values, k, threads);
        Sind = box_sum_rec_parallel(std::vector<cplx>(len, cplx{1, 0}), k, threads);
    }
    if (Sf < 0) Sf = 0; // compensated sums can land a hair below zero

    gowers_result r;
    r.k = k;
    r.strategy = strategy;
    double N = double((u64)len << k);
    double scale = std::pow(N, double(k + 1));
    r.raw_numerator = Sf / scale;
    r.normalizer = Sind / scale;
    r.norm = r.normalizer > 0 ? std::pow(Sf / Sind, std::ldexp(1.0, -k)) : 0.0;
    return r;
}

gowers_result gowers_norm_in_progression(const arith_table& t, u64 q, u64 a, u64 X, int k,
                                         gowers_strategy strategy, int threads) {
    if (q < 1 || a >= q || std::gcd(a == 0 ? q : a, q) != 1)
        throw domain_error("gowers_norm_in_progression: residue must be reduced");
    if (X > t.X || q * (u64)k > X)
        throw domain_error("gowers_norm_in_progression: need q*k <= X <= table.X");
    complex_seq f;
    f.bounded = t.bounded;
    u64 n0 = a == 0 ? q : a; // table starts at 1
    for (u64 n = n0; n <= X; n += q) f.values.push_back(t.at(n));
    return gowers_norm(f, k, strategy, threads);
}

complex_seq multiplicative_derivative(const complex_seq& f, i64 h) {
    complex_seq g;
    g.bounded = f.bounded;
    i64 len = (i64)f.values.size();
    i64 lo = std::max<i64>(0, -h), hi = std::min<i64>(len - 1, len - 1 - h);
    for (i64 n = lo; n <= hi; n++)
        g.values.push_back(f.values[(std::size_t)(n + h)] * std::conj(f.values[(std::size_t)n]));
    return g;
}

/* ----- cyclic group norms ----- */

namespace {

double cyclic_box_sum(const std::vector<cplx>& v, int k) {
    std::size_t N = v.size();
    if (k == 1) return box_sum_1(v);
    if (k == 2) {
        std::vector<cplx> hat = dft_any(v);
        kahan s;
        for (cplx z : hat) {
            double q = std::norm(z);
            s.add(q * q);
        }
        return s.value() / double(N);
    }
    kahan s;
    for (std::size_t h = 0; h < N; h++) {
        std::vector<cplx> d(N);
        for (std::size_t n = 0; n < N; n++) d[n] = v[(n + h) % N] * std::conj(v[n]);
        s.add(cyclic_box_sum(d, k - 1));
    }
    return s.value();
}

} // namespace

double gowers_norm_cyclic(const std::vector<cplx>& f, int k, int threads) {
    if (k < 1 || k > 6) throw domain_error("gowers_norm_cyclic: k must be in [1,6]");
    std::size_t N = f.size();
    if (N == 0) throw domain_error("gowers_norm_cyclic: empty sequence");
    double S;
    if (k <= 2 || threads <= 1) {
        S = cyclic_box_sum(f, k);
    } else {
        std::vector<double> slot(N);
        parallel_for(N, threads, [&](std::size_t h) {
            std::vector<cplx> d(N);
            for (std::size_t n = 0; n < N; n++) d[n] = f[(n + h) % N] * std::conj(f[n]);
            slot[h] = cyclic_box_sum(d, k - 1);
        });
        kahan s;
        for (double x : slot) s.add(x);
        S = s.value();
    }
    if (S < 0) S = 0;
    return std::pow(S / std::pow(double(N), double(k + 1)), std::ldexp(1.0, -k));
}

} // namespace gnap
