#include "doctest.h"
#include "gnap/progressions.hpp"
#include "oracles.hpp"

using namespace gnap;

TEST_SUITE_BEGIN("progressions");

TEST_CASE("correlation of the unit function counts progression terms") {
    arith_table t = unit_table(10000);
    poly_phase zero;
    // n in [1, 10000], n = 3 mod 7: 3, 10, ..., 9997
    cplx s = correlation_sum(t, progression_spec{7, 3, 0, 10000}, zero);
    CHECK(s.real() == doctest::Approx(1429.0).epsilon(1e-12));
    CHECK(s.imag() == 0.0);
    CHECK(correlation_sum(t, progression_spec{1, 0, 0, 10000}, zero).real() ==
          doctest::Approx(10000.0).epsilon(1e-12));
}

TEST_CASE("mertens sum through the correlation interface") {
    arith_table t = sieve_mobius(10);
    poly_phase zero;
    CHECK(correlation_sum(t, progression_spec{1, 0, 0, 10}, zero).real() ==
          doctest::Approx(-1.0).epsilon(1e-12)); // M(10) = -1
}

TEST_CASE("mobius twisted by an irrational phase stays small") {
    arith_table t = sieve_mobius(10000);
    poly_phase phi = poly_phase::from_doubles({0.6180339887498949});
    CHECK(std::abs(correlation_sum(t, progression_spec{4, 1, 0, 10000}, phi)) <= 250.0);
}

TEST_CASE("pointwise evaluation matches tabulation") {
    f_spec s = f_spec::random(100, 100000, 10, 1, task_seed(11, "prog.fspec"));
    std::vector<cplx> tab = tabulate_F(s);
    REQUIRE(tab.size() == 100001);
    rng r(task_seed(11, "prog.points"));
    for (int i = 0; i < 1000; i++) {
        u64 n = r.next_u64() % 100001;
        CHECK(std::abs(eval_F(s, n) - tab[n]) <= 1e-12);
    }
}

TEST_CASE("residue classes of a prime modulus partition the mertens sum") {
    arith_table t = sieve_mobius(10000);
    poly_phase zero;
    kahan_c total;
    for (u64 a = 1; a < 5; a++)
        total.add(correlation_sum(t, progression_spec{5, a, 0, 10000}, zero));
    // add the multiples of 5 directly
    for (u64 n = 5; n <= 10000; n += 5) total.add(t.at(n));
    kahan mertens;
    for (u64 n = 1; n <= 10000; n++) mertens.add(t.at(n).real());
    CHECK(total.value().real() == doctest::Approx(mertens.value()).epsilon(1e-12));
    CHECK(std::abs(total.value().imag()) <= 1e-12);
}

TEST_CASE("discrepancy of the unit function is bounded by one") {
    arith_table t = unit_table(5000);
    CHECK(bv_discrepancy(t, 3, 5000) <= 1.0 + 1e-12);
    CHECK(bv_discrepancy(t, 10, 5000) <= 1.0 + 1e-12);
}

TEST_CASE("modulus two has a single reduced class and no discrepancy") {
    arith_table t = sieve_liouville(4000);
    // the class 1 mod 2 is the whole coprime set, so the two sums coincide
    CHECK(bv_discrepancy(t, 2, 4000) <= 1e-12);
    auto [val, a] = bv_discrepancy_at(t, 2, 4000);
    CHECK(val <= 1e-12);
    CHECK(a == 1);
}

TEST_CASE("worst residue sum matches a direct scan") {
    arith_table t = sieve_mobius(5000);
    auto [val, arg] = max_progression_sum(t, 7, 5000);
    double best = -1.0;
    for (u64 a = 1; a < 7; a++) {
        kahan s;
        for (u64 n = a; n <= 5000; n += 7) s.add(t.at(n).real());
        best = std::max(best, std::abs(s.value()));
    }
    CHECK(val == doctest::Approx(best).epsilon(1e-12));
    // the reported residue really attains the value
    kahan s;
    for (u64 n = arg; n <= 5000; n += 7) s.add(t.at(n).real());
    CHECK(std::abs(s.value()) == doctest::Approx(val).epsilon(1e-12));
}

TEST_CASE("phase supremum saturates for the unit function") {
    arith_table t = unit_table(300);
    sup_result s = sup_correlation(t, 3, 300, 1, 4, task_seed(11, "prog.sup1"));
    // alpha = 0 is always probed, so the count of class terms is a floor
    CHECK(s.value >= 100.0 - 1e-9);
}

TEST_CASE("degree-one supremum dominates the plain partial sum") {
    arith_table t = sieve_liouville(2000);
    kahan s;
    for (u64 n = 1; n <= 2000; n++) s.add(t.at(n).real());
    sup_result r = sup_correlation(t, 1, 2000, 1, 4, task_seed(11, "prog.sup0"));
    CHECK(r.value >= std::abs(s.value()) - 1e-9);
}

TEST_CASE("quadratic supremum beats a coarse grid oracle") {
    arith_table t = sieve_mobius(10000);
    sup_result s = sup_correlation(t, 5, 10000, 2, 8, task_seed(11, "prog.sup2"));
    // 200 x 200 grid over both coefficients of the class a = 1, with a
    // 200th-roots table; the library sup ranges over every class, so the
    // grid value is a floor up to grid resolution
    std::vector<cplx> root(200);
    for (int j = 0; j < 200; j++)
        root[j] = std::polar(1.0, 2.0 * M_PI * (double)j / 200.0);
    std::vector<u64> ns;
    for (u64 n = 1; n <= 10000; n++)
        if (n % 5 == 1) ns.push_back(n);
    std::vector<u64> n1(ns.size()), n2(ns.size());
    std::vector<double> fv(ns.size());
    for (size_t j = 0; j < ns.size(); j++) {
        n1[j] = ns[j] % 200;
        n2[j] = ns[j] * ns[j] % 200;
        fv[j] = t.at(ns[j]).real();
    }
    double best = 0.0;
    for (u64 i1 = 0; i1 < 200; i1++)
        for (u64 i2 = 0; i2 < 200; i2++) {
            kahan_c acc;
            for (size_t j = 0; j < ns.size(); j++)
                if (fv[j] != 0.0) acc.add(fv[j] * root[(i1 * n1[j] + i2 * n2[j]) % 200]);
            best = std::max(best, std::abs(acc.value()));
        }
    CHECK(s.value >= 0.95 * best);
}

TEST_CASE("exhausted budget is reported but the result stays valid") {
    arith_table t = unit_table(500);
    sup_result s = sup_correlation(t, 2, 500, 1, 2, 1, 2e4);
    CHECK(s.budget_exhausted);
    CHECK(s.value >= 250.0 - 1e-9); // alpha = 0 survives any subsampling
}

TEST_CASE("scan of plain progression sums sees no cancellation for unit") {
    arith_table t = unit_table(10000);
    bv_report rep = exceptional_scan(t, 30, 10000, 0, 2.0);
    CHECK(rep.rows.size() == 30);
    CHECK(rep.exceptional_count == 0);
    for (const bv_row& r : rep.rows) CHECK(!r.exceptional);
}

TEST_CASE("scan refuses a modulus range out of hypothesis") {
    arith_table t = unit_table(10000);
    CHECK_THROWS_AS(exceptional_scan(t, 100, 10000, 0, 0.1), hypothesis_error);
}

TEST_CASE("divisor mass decays like the reciprocal of the cutoff") {
    f_spec s = f_spec::random(50, 20000, 6, 1, task_seed(11, "prog.mass"));
    std::vector<cplx> tab = tabulate_F(s);
    double c1 = divisor_mass(tab, 1);
    CHECK(c1 > 0.0);
    for (u64 d = 2; d <= 10; d++)
        CHECK(divisor_mass(tab, d) <= 4.0 * c1 / (double)d + 1e-9);
}

TEST_CASE("progression validation rejects malformed entries") {
    CHECK_THROWS_AS((progression_spec{7, 9, 0, 100}.validate(100)), config_error);
    CHECK_THROWS_AS((progression_spec{6, 2, 0, 100}.validate(100)), config_error);
    CHECK_THROWS_AS((progression_spec{7, 3, 0, 200}.validate(100)), config_error);
    CHECK_NOTHROW((progression_spec{7, 3, 10, 90}.validate(100)));
}

TEST_CASE("correlation needs a table covering the range") {
    arith_table t = unit_table(100);
    poly_phase zero;
    CHECK_THROWS_AS(correlation_sum(t, progression_spec{3, 1, 0, 1000}, zero),
                    coverage_error);
}

TEST_CASE("scan rows are identical across thread counts") {
    arith_table t = sieve_mobius(20000);
    bv_report r1 = exceptional_scan(t, 40, 20000, 1, 0.05, 3, 1, 1);
    bv_report r8 = exceptional_scan(t, 40, 20000, 1, 0.05, 3, 1, 8);
    REQUIRE(r1.rows.size() == r8.rows.size());
    for (size_t i = 0; i < r1.rows.size(); i++) {
        CHECK(r1.rows[i].q == r8.rows[i].q);
        CHECK(r1.rows[i].a == r8.rows[i].a);
        CHECK(r1.rows[i].value == r8.rows[i].value);
        CHECK(r1.rows[i].alpha == r8.rows[i].alpha);
    }
    CHECK(r1.mean_value == r8.mean_value);
}

TEST_SUITE_END();
