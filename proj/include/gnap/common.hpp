#pragma once
// Shared plumbing: error taxonomy, deterministic RNG, compensated sums,
// mod-1 fixed point helpers, exact small rationals, a block-parallel loop.
#include <cstdint>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gnap {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using cplx = std::complex<double>;

/* ----- errors ----- */
// config/hypothesis map to CLI exit 2, everything else to 1.
struct error : std::runtime_error { using std::runtime_error::runtime_error; };
struct config_error : error { using error::error; };
struct hypothesis_error : error { using error::error; };
struct domain_error : error { using error::error; };
struct capacity_error : error { using error::error; };
struct cost_error : error { using error::error; };
struct coverage_error : error { using error::error; };

/* ----- deterministic rng ----- */
// splitmix64 stream; identical output on every platform, unlike the
// distributions in <random>.
inline u64 splitmix64(u64& x) {
    x += 0x9e3779b97f4a7c15ull;
    u64 z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct rng {
    u64 state;
    explicit rng(u64 seed) : state(seed) {}
    u64 next_u64() { return splitmix64(state); }
    // uniform in [0,1), 53 bits
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }
    // uniform in the closed unit disc
    cplx next_unit_disc() {
        double r = std::sqrt(next_double());
        double t = next_double();
        return std::polar(r, 2.0 * M_PI * t);
    }
};

// fnv-1a, doubles as the per-task seed derivation and the output digest
inline u64 fnv1a(const void* data, std::size_t n, u64 h = 0xcbf29ce484222325ull) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; i++) { h ^= p[i]; h *= 0x100000001b3ull; }
    return h;
}
inline u64 task_seed(u64 seed, const std::string& task) {
    u64 h = fnv1a(task.data(), task.size());
    return fnv1a(&seed, sizeof seed, h) | 1ull;
}

/* ----- compensated accumulation ----- */
struct kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};
struct kahan_c {
    kahan re, im;
    void add(cplx z) { re.add(z.real()); im.add(z.imag()); }
    cplx value() const { return {re.value(), im.value()}; }
};

/* ----- mod-1 fixed point ----- */
// angles as 0.64 fixed point; wrapping u64 arithmetic is exact reduction
// mod 1, so polynomial phases evaluate without cancellation at n ~ 1e9.
inline u64 frac64_from_double(double a) {
    long double f = a - std::floor((long double)a);
    long double scaled = f * 18446744073709551616.0L; // 2^64
    if (scaled >= 18446744073709551616.0L) scaled = 0.0L;
    return (u64)scaled;
}
inline double frac64_to_double(u64 a) { return double(a) * 0x1.0p-64; }
// distance to the nearest integer of a/2^64
inline double frac64_dist(u64 a) {
    u64 d = std::min(a, u64(0) - a);
    return double(d) * 0x1.0p-64;
}
inline cplx unit_phase(u64 a) {
    double t = 2.0 * M_PI * frac64_to_double(a);
    return {std::cos(t), std::sin(t)};
}

// inverse of a mod m by extended euclid; domain error unless gcd(a,m)=1
inline u64 mod_inverse(u64 a, u64 m) {
    if (m == 1) return 0;
    i64 old_r = i64(a % m), r = i64(m);
    i64 old_s = 1, s = 0;
    while (r != 0) {
        i64 q = old_r / r;
        i64 t = old_r - q * r; old_r = r; r = t;
        t = old_s - q * s; old_s = s; s = t;
    }
    if (old_r != 1) throw domain_error("mod_inverse: arguments are not coprime");
    old_s %= i64(m);
    if (old_s < 0) old_s += i64(m);
    return u64(old_s);
}

/* ----- exact small rationals ----- */
// only needs denominators up to a product of a few prime counts; i64 is ample
struct rational {
    i64 num = 0, den = 1;
    rational() = default;
    rational(i64 n, i64 d) : num(n), den(d) { reduce(); }
    void reduce() {
        if (den < 0) { num = -num; den = -den; }
        i64 g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
    rational operator+(const rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
    rational operator*(const rational& o) const { return {num * o.num, den * o.den}; }
    bool operator==(const rational& o) const { return num == o.num && den == o.den; }
    double to_double() const { return double(num) / double(den); }
};

/* ----- deterministic block-parallel loop ----- */
// each index writes only its own slot; callers reduce serially in index
// order, so results do not depend on the thread count.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    if (threads < 1) threads = 1;
    if (threads == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; i++) fn(i);
        return;
    }
    std::size_t t = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (std::size_t w = 0; w < t; w++) {
        pool.emplace_back([&, w] {
            std::size_t lo = n * w / t, hi = n * (w + 1) / t;
            for (std::size_t i = lo; i < hi; i++) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

/* ----- small formatting helpers ----- */
// fixed 15 significant digits so CSV output is byte-stable
std::string fmt_g15(double x);
std::string format_hms(double seconds);
double wall_time();

} // namespace gnap
