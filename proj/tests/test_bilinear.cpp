#include "doctest.h"
#include "gnap/bilinear.hpp"
#include "oracles.hpp"
#include <numeric>

using namespace gnap;

TEST_SUITE_BEGIN("bilinear");

/* ----- congruence merge ----- */

TEST_CASE("merge of aligned residues keeps the modulus") {
    auto m = congruence_merge(1, 1, 5, 5, 2, 2);
    REQUIRE(m.has_value());
    CHECK(m->modulus == 5);
    CHECK(m->residue == 2);
}

TEST_CASE("merge of coprime moduli is the crt combination") {
    auto m = congruence_merge(1, 1, 3, 5, 1, 2);
    REQUIRE(m.has_value());
    CHECK(m->modulus == 15);
    CHECK(m->residue == 7);
}

TEST_CASE("incompatible parities do not merge") {
    CHECK(!congruence_merge(1, 1, 4, 6, 1, 2).has_value());
}

TEST_CASE("scaled congruences reduce by their gcd before merging") {
    // 2l = 2 (mod 4) and l = 1 (mod 3): l odd, l = 1 (mod 3) -> l = 1 (mod 6)
    auto m = congruence_merge(2, 1, 4, 3, 2, 1);
    REQUIRE(m.has_value());
    CHECK(m->modulus == 6);
    CHECK(m->residue == 1);
    // 2l = 1 (mod 4) has no solution at all
    CHECK(!congruence_merge(2, 1, 4, 1, 1, 0).has_value());
}

TEST_CASE("merge against brute force over two thousand random instances") {
    rng r(task_seed(17, "bilinear.merge"));
    for (int rep = 0; rep < 2000; rep++) {
        u64 q = 1 + r.next_u64() % 30, qp = 1 + r.next_u64() % 30;
        u64 k = r.next_u64() % 40, kp = r.next_u64() % 40;
        u64 a = r.next_u64() % q, ap = r.next_u64() % qp;
        auto m = congruence_merge(k, kp, q, qp, a, ap);
        u64 span = q / std::gcd(q, qp) * qp; // any solution set repeats mod this
        auto solves = [&](u64 l) { return k * l % q == a && kp * l % qp == ap; };
        if (!m) {
            for (u64 l = 0; l < span; l++) CHECK(!solves(l));
        } else {
            CHECK(m->residue < m->modulus);
            CHECK(span % m->modulus == 0);
            for (u64 l = 0; l < 2 * span; l++)
                CHECK(solves(l) == (l % m->modulus == m->residue));
        }
    }
}

/* ----- composed phases ----- */

TEST_CASE("composition with the identity is the identity") {
    poly_phase phi;
    phi.alpha = {123456789ull, 987654321ull, 555ull};
    phi.alpha0 = 42;
    poly_phase c = composed_phase(phi, 1, 0);
    CHECK(c.alpha == phi.alpha);
    CHECK(c.alpha0 == phi.alpha0);
}

TEST_CASE("quadratic composition pinned in fixed point") {
    poly_phase phi; // phi(n) = n^2 / 8
    phi.alpha = {0, 1ull << 61};
    poly_phase c = composed_phase(phi, 2, 3); // (2m+3)^2/8 = (4m^2 + 12m + 9)/8
    CHECK(c.alpha[1] == (1ull << 63)); // 4/8 = 1/2
    CHECK(c.alpha[0] == (1ull << 63)); // 12/8 = 3/2 -> 1/2
    CHECK(c.alpha0 == (1ull << 61));   // 9/8 -> 1/8
}

TEST_CASE("pure scaling of a linear phase matches coefficient scaling") {
    poly_phase phi = poly_phase::from_doubles({0.3});
    poly_phase c = composed_phase(phi, 4, 0);
    CHECK(c.alpha[0] == phi.scaled(4).alpha[0]);
    CHECK(frac64_to_double(c.alpha[0]) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("composed phase agrees bitwise with substitution") {
    rng r(task_seed(17, "bilinear.compose"));
    for (int rep = 0; rep < 200; rep++) {
        poly_phase phi;
        int deg = 1 + (int)(r.next_u64() % 4);
        phi.alpha0 = r.next_u64();
        for (int i = 0; i < deg; i++) phi.alpha.push_back(r.next_u64());
        u64 scale = r.next_u64() % 10000, shift = r.next_u64() % 10000;
        poly_phase c = composed_phase(phi, scale, shift);
        for (u64 m = 0; m < 50; m++)
            CHECK(c.eval_frac(m) == phi.eval_frac(scale * m + shift));
    }
}

/* ----- type II sums ----- */

static f_spec small_spec(u64 Q, u64 X, int entries, int s, u64 seed) {
    return f_spec::random(Q, X, entries, s, seed);
}

TEST_CASE("bilinear sum equals the brute-force double loop") {
    for (int inst = 0; inst < 5; inst++) {
        typeII_config tc;
        tc.K = 10;
        tc.L = 200;
        tc.Q = 4;
        tc.delta = 0.1;
        u64 X = 4 * tc.K * tc.L;
        f_spec spec = small_spec(tc.Q, X, 5, 2, task_seed(17, "bilinear.t2." + std::to_string(inst)));
        std::vector<cplx> F = tabulate_F(spec);
        typeII_result got = typeII_sum(tc, spec, F, 1);
        // independent route: pointwise F evaluation, no tabulation
        kahan total;
        for (u64 k = tc.K; k < 2 * tc.K; k++)
            for (u64 kp = tc.K; kp < 2 * tc.K; kp++) {
                kahan_c inner;
                for (u64 l = 1; l <= tc.L; l++)
                    inner.add(eval_F(spec, k * l) * std::conj(eval_F(spec, kp * l)));
                total.add(std::abs(inner.value()));
            }
        CHECK(got.value == doctest::Approx(total.value()).epsilon(1e-9));
        CHECK(got.normalized ==
              doctest::Approx(total.value() / ((double)tc.K * tc.K * tc.L)).epsilon(1e-9));
    }
}

TEST_CASE("empty spec gives a zero bilinear sum") {
    typeII_config tc;
    tc.K = 4;
    tc.L = 100;
    tc.Q = 1;
    tc.delta = 0.1;
    f_spec spec;
    spec.Q = 1;
    spec.X = 4 * tc.K * tc.L;
    spec.refresh();
    std::vector<cplx> F = tabulate_F(spec);
    typeII_result r = typeII_sum(tc, spec, F, 1);
    CHECK(r.value == 0.0);
    CHECK(!r.exceeds);
    CHECK(typeII_inner_merged(tc, spec, 4, 5) == cplx(0.0, 0.0));
}

TEST_CASE("merged congruence route reproduces the direct inner sums") {
    rng r(task_seed(17, "bilinear.merged"));
    for (u64 q : {5ull, 6ull, 7ull}) {
        typeII_config tc;
        tc.K = 6;
        tc.L = 10 * q * q;
        tc.Q = q;
        tc.delta = 0.1;
        u64 X = 4 * tc.K * tc.L;
        f_spec spec;
        spec.Q = q;
        spec.X = X;
        for (int e = 0; e < 2; e++) {
            f_entry fe;
            fe.prog.q = q + e;
            fe.prog.a = [&] {
                u64 a;
                do a = r.next_u64() % (q + e);
                while (std::gcd(a, q + e) != 1);
                return a;
            }();
            fe.prog.lo = 0;
            fe.prog.hi = X;
            fe.phase.alpha = {r.next_u64(), r.next_u64()};
            fe.phase.alpha0 = r.next_u64();
            spec.entries.push_back(fe);
        }
        spec.refresh();
        std::vector<cplx> F = tabulate_F(spec);
        for (u64 k = tc.K; k < 2 * tc.K; k++)
            for (u64 kp = tc.K; kp < 2 * tc.K; kp++) {
                cplx d = typeII_inner_direct(tc, spec, F, k, kp);
                cplx m = typeII_inner_merged(tc, spec, k, kp);
                CHECK(std::abs(d - m) <= 1e-9);
            }
    }
}

TEST_CASE("validation rejects bad parameters") {
    typeII_config tc;
    tc.K = 5;
    tc.L = 200;
    tc.Q = 10;
    tc.delta = 0.1;
    CHECK_THROWS_AS(tc.validate(), hypothesis_error); // 10 Q^2 > L
    tc.Q = 4;
    tc.delta = 0.7;
    CHECK_THROWS_AS(tc.validate(), config_error);
    tc.delta = 0.1;
    CHECK_NOTHROW(tc.validate());
}

TEST_CASE("short tabulation is refused") {
    typeII_config tc;
    tc.K = 2;
    tc.L = 50;
    tc.Q = 1;
    tc.delta = 0.1;
    f_spec spec;
    spec.Q = 1;
    spec.X = 4 * tc.K * tc.L;
    spec.refresh();
    std::vector<cplx> F(10, cplx(0.0));
    CHECK_THROWS_AS(typeII_sum(tc, spec, F, 1), coverage_error);
}

TEST_CASE("bilinear sum is identical across thread counts") {
    typeII_config tc;
    tc.K = 10;
    tc.L = 500;
    tc.Q = 4;
    tc.delta = 0.1;
    u64 X = 4 * tc.K * tc.L;
    f_spec spec = small_spec(tc.Q, X, 5, 1, task_seed(17, "bilinear.thr"));
    std::vector<cplx> F = tabulate_F(spec);
    typeII_result r1 = typeII_sum(tc, spec, F, 1);
    typeII_result r8 = typeII_sum(tc, spec, F, 8);
    CHECK(r1.value == r8.value);
    CHECK(r1.normalized == r8.normalized);
}

/* ----- lcm statistics ----- */

TEST_CASE("tiny window by hand") {
    lcm_stats_result s = lcm_stats(2, 4);
    CHECK(s.pair_count == 2); // (2,3) and (3,2), lcm 6
    CHECK(s.D == 0.5);
    CHECK(s.mult_of(2, 6) == 1);
    CHECK(s.mult_of(3, 6) == 1);
    CHECK(s.mult_of(2, 4) == 0);
    CHECK(s.entry_count() == 2);
    CHECK(s.histogram.at(1) == 2);
    CHECK(s.tail(1) == 2);
    CHECK(s.tail(2) == 0);
}

TEST_CASE("multiplicities match a brute-force map") {
    lcm_stats_result s = lcm_stats(10, 100);
    std::map<std::pair<u64, u64>, u64> brute;
    u64 pairs = 0;
    for (u64 q = 10; q < 20; q++)
        for (u64 qp = 10; qp < 20; qp++) {
            u64 l = std::lcm(q, qp);
            if (l < 100 || l >= 200) continue;
            pairs++;
            brute[{q, l}]++;
        }
    CHECK(s.pair_count == pairs);
    CHECK(s.entry_count() == brute.size());
    for (auto& [key, m] : brute) CHECK(s.mult_of(key.first, key.second) == m);
    for (std::size_t i = 0; i < s.entry_count(); i++) {
        u64 q, rr, m;
        s.entry(i, q, rr, m);
        CHECK(brute.at({q, rr}) == m);
    }
    // tails against the brute map
    for (u64 m0 : {1ull, 2ull, 3ull, 4ull}) {
        u64 want = 0;
        for (auto& [key, m] : brute)
            if (m >= m0) want += m;
        CHECK(s.tail(m0) == want);
    }
    // histogram masses add back up to the pair count
    u64 mass = 0;
    for (auto [m, cnt] : s.histogram) {
        CHECK(cnt % m == 0);
        mass += cnt;
    }
    CHECK(mass == s.pair_count);
}

TEST_CASE("multiplicity never beats the dyadic divisor count") {
    lcm_stats_result s = lcm_stats(10, 100);
    for (std::size_t i = 0; i < s.entry_count(); i++) {
        u64 q, rr, m;
        s.entry(i, q, rr, m);
        CHECK(m <= s.sigma[q - s.Q]);
    }
}

TEST_CASE("dyadic divisor counts pinned and brute-forced") {
    CHECK(sigma_D(12, 1.0) == 5);  // 1,2,3,4,6 in [1,8]
    CHECK(sigma_D(97, 2.0) == 0);  // prime, 1 and 97 both outside [2,16]
    CHECK(sigma_D(16, 2.0) == 4);  // 2,4,8,16
    u64 brute = 0;
    for (u64 q = 100; q < 200; q++) {
        u64 c = 0;
        for (u64 d = 1; d <= q; d++)
            if (q % d == 0 && (double)d >= 10.0 && (double)d <= 80.0) c++;
        brute += c * c;
    }
    CHECK(sigma_D_second_moment(100, 10.0) == brute);
}

TEST_CASE("second moment grows almost linearly in the window size") {
    double c2 = (double)sigma_D_second_moment(100, 10.0) / 100.0;
    CHECK((double)sigma_D_second_moment(1000, 10.0) <= 4.0 * c2 * 1000.0);
}

TEST_CASE("window bounds are enforced") {
    CHECK_THROWS_AS(lcm_stats(10, 9), config_error);
    CHECK_THROWS_AS(lcm_stats(10, 401), config_error);
    CHECK_THROWS_AS(lcm_stats(10001, 10001), cost_error);
}

TEST_SUITE_END();
