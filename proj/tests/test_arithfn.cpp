#include "doctest.h"
#include "gnap/arithfn.hpp"
#include "oracles.hpp"

using namespace gnap;

TEST_SUITE_BEGIN("arithfn");

TEST_CASE("spf table, first ten values") {
    spf_table t = sieve_spf(10);
    std::uint32_t want[10] = {1, 2, 3, 2, 5, 2, 7, 2, 3, 2};
    for (u64 n = 1; n <= 10; n++) CHECK(t[n] == want[n - 1]);
}

TEST_CASE("spf against trial division") {
    spf_table t = sieve_spf(20000);
    for (u64 n = 1; n <= 20000; n++) CHECK(t[n] == oracle::spf_trial(n));
}

TEST_CASE("mobius pinned values and sign conventions") {
    arith_table mu = sieve_mobius(100);
    CHECK(mu.small[1] == 1);
    CHECK(mu.small[2] == -1);
    CHECK(mu.small[6] == 1);   // two prime factors
    CHECK(mu.small[12] == 0);  // square factor
    CHECK(mu.small[30] == -1); // three prime factors
}

TEST_CASE("liouville pinned values") {
    arith_table la = sieve_liouville(100);
    CHECK(la.small[1] == 1);
    CHECK(la.small[2] == -1);
    CHECK(la.small[4] == 1);
    CHECK(la.small[12] == -1); // 2^2*3, three factors with multiplicity
}

TEST_CASE("sieves against trial division on a random subsample") {
    const u64 X = 200000;
    arith_table mu = sieve_mobius(X);
    arith_table la = sieve_liouville(X);
    rng r(task_seed(42, "arithfn.subsample"));
    for (int i = 0; i < 10000; i++) {
        u64 n = 1 + r.next_u64() % X;
        CHECK(mu.small[n] == oracle::mu_trial(n));
        CHECK(la.small[n] == oracle::lambda_trial(n));
    }
}

TEST_CASE("squarefree count identity") {
    // sum of mu(n)^2 equals sum_{d<=sqrt X} mu(d) floor(X/d^2)
    for (u64 X : {1000ull, 10000ull, 100000ull}) {
        arith_table mu = sieve_mobius(X);
        i64 direct = 0;
        for (u64 n = 1; n <= X; n++) direct += i64(mu.small[n]) * i64(mu.small[n]);
        CHECK(direct == oracle::squarefree_count_identity(X));
    }
}

TEST_CASE("multspec tabulation matches the dedicated sieves") {
    const u64 X = 10000;
    arith_table mu = sieve_mobius(X);
    arith_table mu2 = table_from_multspec(mult_spec::mobius(), X);
    arith_table la = sieve_liouville(X);
    arith_table la2 = table_from_multspec(mult_spec::liouville(), X);
    for (u64 n = 1; n <= X; n++) {
        CHECK(mu2.wide[n].real() == double(mu.small[n]));
        CHECK(la2.wide[n].real() == double(la.small[n]));
    }
}

TEST_CASE("random disc spec: multiplicative, bounded, deterministic") {
    const u64 X = 5000;
    arith_table f = table_from_multspec(mult_spec::random_disc(7), X);
    arith_table f2 = table_from_multspec(mult_spec::random_disc(7), X);
    rng r(task_seed(7, "arithfn.coprime-pairs"));
    for (u64 n = 1; n <= X; n++) {
        CHECK(std::abs(f.wide[n]) <= 1.0 + 1e-12);
        CHECK(f.wide[n] == f2.wide[n]);
    }
    for (int i = 0; i < 2000; i++) {
        u64 m = 1 + r.next_u64() % 70, n = 1 + r.next_u64() % 70;
        if (std::gcd(m, n) != 1) continue;
        cplx lhs = f.wide[m * n];
        cplx rhs = f.wide[m] * f.wide[n];
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("out-of-disc values are rejected") {
    mult_spec bad;
    bad.at = [](u64, int) { return cplx(1.5, 0.0); };
    CHECK_THROWS_AS((void)table_from_multspec(bad, 100), domain_error);
}

TEST_CASE("capacity budget") {
    CHECK_THROWS_AS((void)sieve_mobius(table_capacity + 1), capacity_error);
}

TEST_CASE("cache roundtrip and keying") {
    const char* dir = "cache_test_dir";
    arith_table mu = sieve_mobius(3000);
    REQUIRE(write_cache(dir, mu));
    auto hit = load_cache(dir, fn_kind::mobius, 3000);
    REQUIRE(hit.has_value());
    CHECK(hit->small == mu.small);
    CHECK_FALSE(load_cache(dir, fn_kind::mobius, 4000).has_value());
    CHECK_FALSE(load_cache(dir, fn_kind::liouville, 3000).has_value());

    arith_table f = table_from_multspec(mult_spec::random_disc(9), 500);
    REQUIRE(write_cache(dir, f));
    auto chit = load_cache(dir, fn_kind::custom, 500);
    REQUIRE(chit.has_value());
    CHECK(chit->wide == f.wide);
}

TEST_SUITE_END();
