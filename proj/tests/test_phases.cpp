#include "doctest.h"
#include "gnap/phases.hpp"
#include "oracles.hpp"

using namespace gnap;

TEST_SUITE_BEGIN("phases");

/* independent residual scan: widened integer products instead of the
   library's wrapping horner route */
static double residual_scan(const poly_phase& phi, u64 N, u64 r) {
    long double worst = 0.0L;
    long double scale = 1.0L;
    for (int i = 0; i < phi.degree(); i++) {
        scale *= (long double)N;
        u64 frac = (u64)(static_cast<unsigned __int128>(r) * phi.alpha[i]);
        u64 d = std::min(frac, 0 - frac);
        long double dist = (long double)d * 0x1.0p-64L;
        worst = std::max(worst, scale * dist);
    }
    return (double)worst;
}

TEST_CASE("fixed point dyadic rationals are exact") {
    CHECK(frac64_from_double(0.25) == (1ull << 62));
    CHECK(frac64_from_double(0.5) == (1ull << 63));
    CHECK(frac64_from_double(1.0 / 8) == (1ull << 61));
    CHECK(frac64_to_double(1ull << 62) == 0.25);
    poly_phase phi = poly_phase::from_doubles({0.25});
    CHECK(phi.eval_frac(2) == (1ull << 63));
    CHECK(phi.eval_frac(4) == 0); // 1.0 wraps to 0 mod 1
}

TEST_CASE("horner evaluation equals explicit wrapped powers") {
    rng r(task_seed(7, "phases.horner"));
    for (int rep = 0; rep < 200; rep++) {
        poly_phase phi;
        int deg = 1 + (int)(r.next_u64() % 4);
        phi.alpha0 = r.next_u64();
        for (int i = 0; i < deg; i++) phi.alpha.push_back(r.next_u64());
        u64 n = r.next_u64() % 1000000000ull;
        u64 want = phi.alpha0;
        u64 pw = 1;
        for (int i = 0; i < deg; i++) {
            pw *= n; // wraps, exact mod 2^64
            want += phi.alpha[i] * pw;
        }
        CHECK(phi.eval_frac(n) == want);
    }
}

TEST_CASE("scaled is exact coefficient-wise multiplication") {
    rng r(task_seed(7, "phases.scaled"));
    for (int rep = 0; rep < 100; rep++) {
        poly_phase phi;
        phi.alpha = {r.next_u64(), r.next_u64()};
        phi.alpha0 = r.next_u64();
        u64 m = r.next_u64() % 10000;
        poly_phase sc = phi.scaled(m);
        for (u64 n = 0; n < 20; n++) CHECK(sc.eval_frac(n) == m * phi.eval_frac(n));
    }
    poly_phase p3 = poly_phase::from_doubles({0.3});
    double got = frac64_to_double(p3.scaled(4).alpha[0]);
    CHECK(std::abs(got - 0.2) <= 1e-15); // 4 * 0.3 mod 1
}

TEST_CASE("weyl sum of the zero phase is one") {
    poly_phase zero;
    CHECK(std::abs(weyl_sum(zero, 1000) - cplx(1.0, 0.0)) <= 1e-13);
}

TEST_CASE("weyl sum of a linear phase matches the geometric closed form") {
    for (double a : {0.3, 0.137, 0.61803398875}) {
        poly_phase phi = poly_phase::from_doubles({a});
        u64 N = 1000;
        double alpha = frac64_to_double(phi.alpha[0]);
        double closed = std::abs(std::sin(M_PI * (double)N * alpha) / std::sin(M_PI * alpha));
        CHECK(std::abs(std::abs(weyl_sum(phi, N)) * (double)N - closed) <= 1e-8);
    }
}

TEST_CASE("smoothness norm pinned example") {
    poly_phase phi = poly_phase::from_doubles({0.3, 0.125});
    // max(N ||0.3||, N^2 ||1/8||) at N = 10
    CHECK(smoothness_norm(phi, 10) == doctest::Approx(12.5).epsilon(1e-12));
}

TEST_CASE("best denominator against an exhaustive independent scan") {
    rng r(task_seed(7, "phases.dio"));
    for (int rep = 0; rep < 30; rep++) {
        poly_phase phi;
        int deg = 1 + (int)(r.next_u64() % 3);
        for (int i = 0; i < deg; i++) phi.alpha.push_back(r.next_u64());
        u64 N = 500, r_max = 200;
        dio_approx got = best_denominator(phi, N, r_max);
        u64 best_r = 1;
        double best_v = residual_scan(phi, N, 1);
        for (u64 rr = 2; rr <= r_max; rr++) {
            double v = residual_scan(phi, N, rr);
            if (v < best_v) {
                best_v = v;
                best_r = rr;
            }
        }
        CHECK(got.r == best_r);
        CHECK(got.residual == doctest::Approx(best_v).epsilon(1e-9));
    }
}

TEST_CASE("continued fraction route agrees for one frequency") {
    rng r(task_seed(7, "phases.cf"));
    for (int rep = 0; rep < 40; rep++) {
        u64 alpha = r.next_u64();
        poly_phase phi;
        phi.alpha = {alpha};
        dio_approx ex = best_denominator(phi, 10000, 300);
        dio_approx cf = best_denominator_cf(alpha, 10000, 300);
        CHECK(cf.r <= 300);
        // the minimizer of ||r alpha|| is a convergent denominator, so the
        // two searches find the same residual
        CHECK(ex.residual == doctest::Approx(cf.residual).epsilon(1e-12));
    }
}

TEST_CASE("golden ratio denominator is the largest fibonacci below the bound") {
    poly_phase phi = poly_phase::from_doubles({0.6180339887498949});
    dio_approx ap = best_denominator(phi, 10000, 100);
    CHECK(ap.r == 89);
}

TEST_CASE("exact rational frequency recovers its denominator") {
    poly_phase phi;
    phi.alpha = {(u64)((static_cast<unsigned __int128>(3) << 64) / 8)};
    dio_approx ap = best_denominator(phi, 100, 10);
    CHECK(ap.r == 8);
    CHECK(ap.residual == 0.0);
}

TEST_CASE("golden linear phase is totally equidistributed at delta 0.1") {
    poly_phase phi = poly_phase::from_doubles({0.6180339887498949});
    equidist_report rep = equidist_defect(phi, 10000, 0.1);
    CHECK(rep.equidistributed);
    CHECK(rep.defect <= 0.1);
}

TEST_CASE("rational frequency 1/5 fails with a step-5 witness") {
    poly_phase phi = poly_phase::from_doubles({0.2});
    equidist_report rep = equidist_defect(phi, 10000, 0.1);
    CHECK(!rep.equidistributed);
    CHECK(rep.defect >= 0.99);
    CHECK(rep.witness_step == 5);
    // the witness really attains the reported defect
    kahan_c s;
    poly_phase m = phi.scaled(rep.witness_freq);
    for (u64 j = 0; j < rep.witness_length; j++)
        s.add(unit_phase(m.eval_frac(rep.witness_start + j * rep.witness_step)));
    CHECK(std::abs(s.value()) / (double)rep.witness_length ==
          doctest::Approx(rep.defect).epsilon(1e-12));
}

TEST_CASE("near-quarter frequency is flagged through a mod-4 coherence") {
    poly_phase phi = poly_phase::from_doubles({0.25 + 1e-7});
    equidist_report rep = equidist_defect(phi, 10000, 0.1);
    CHECK(!rep.equidistributed);
    CHECK(rep.defect >= 0.9);
    // coherence requires step * freq = 0 (mod 4), whichever the scan hit first
    CHECK(rep.witness_step * rep.witness_freq % 4 == 0);
}

TEST_CASE("witness parameters always describe a real progression") {
    rng r(task_seed(7, "phases.witness"));
    for (int rep = 0; rep < 10; rep++) {
        poly_phase phi = poly_phase::from_doubles({r.next_double(), r.next_double() * 0.01});
        u64 N = 4000;
        equidist_report e = equidist_defect(phi, N, 0.2);
        CHECK(e.witness_length >= 1);
        CHECK(e.witness_start + (e.witness_length - 1) * e.witness_step < N);
        CHECK(e.witness_freq >= 1);
        kahan_c s;
        poly_phase m = phi.scaled(e.witness_freq);
        for (u64 j = 0; j < e.witness_length; j++)
            s.add(unit_phase(m.eval_frac(e.witness_start + j * e.witness_step)));
        CHECK(std::abs(s.value()) / (double)e.witness_length ==
              doctest::Approx(e.defect).epsilon(1e-12));
    }
}

TEST_CASE("defect scan refuses absurd budgets") {
    poly_phase phi = poly_phase::from_doubles({0.37});
    CHECK_THROWS_AS(equidist_defect(phi, 1000000, 0.02, 1, 1e4), cost_error);
}

TEST_CASE("defect scan rejects bad delta") {
    poly_phase phi = poly_phase::from_doubles({0.37});
    CHECK_THROWS_AS(equidist_defect(phi, 1000, 0.0), domain_error);
    CHECK_THROWS_AS(equidist_defect(phi, 1000, 1.5), domain_error);
}

TEST_SUITE_END();
