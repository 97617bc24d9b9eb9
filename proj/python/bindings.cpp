#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gnap/harness.hpp"

namespace py = pybind11;
using namespace gnap;

PYBIND11_MODULE(_gnap, m) {
    m.doc() = "Gowers norms of bounded multiplicative functions in progressions: "
              "sieved tables, correlation sums, bilinear sums, lcm statistics and "
              "equidistribution diagnostics";
    m.attr("__version__") = tool_version;

    py::register_exception<config_error>(m, "ConfigError");
    py::register_exception<hypothesis_error>(m, "HypothesisError");
    py::register_exception<coverage_error>(m, "CoverageError");
    py::register_exception<cost_error>(m, "CostError");

    /* ----- tables ----- */

    py::class_<arith_table>(m, "ArithTable")
        .def_readonly("X", &arith_table::X)
        .def("at", [](const arith_table& t, u64 n) { return t.at(n); }, py::arg("n"),
             "value at n, 1 <= n <= X")
        .def("__len__", [](const arith_table& t) { return t.X; });

    m.def("table", &table_for, py::arg("function"), py::arg("X"), py::arg("seed") = 1,
          "sieve a function table: mobius, liouville, unit, squarefree or random");

    py::class_<spf_table>(m, "SpfTable").def_readonly("X", &spf_table::X);
    m.def("sieve_spf", &sieve_spf, py::arg("X"), "smallest-prime-factor table on [2,X]");

    /* ----- phases ----- */

    py::class_<poly_phase>(m, "PolyPhase")
        .def(py::init<>())
        .def_static("from_doubles", &poly_phase::from_doubles, py::arg("alpha"),
                    py::arg("alpha0") = 0.0,
                    "phase sum_i alpha[i] n^(i+1) + alpha0 in 0.64 fixed point")
        .def("degree", &poly_phase::degree)
        .def("eval", &poly_phase::eval, py::arg("n"), "e(phi(n)) on the unit circle")
        .def(
            "frac", [](const poly_phase& p, u64 n) { return frac64_to_double(p.eval_frac(n)); },
            py::arg("n"), "phi(n) mod 1 as a double")
        .def("scaled", &poly_phase::scaled, py::arg("m"), "the phase m * phi, exact mod 1");

    m.def("composed_phase", &composed_phase, py::arg("phi"), py::arg("scale"),
          py::arg("shift"), "coefficients of phi(scale * m + shift), exact mod 1");
    m.def("weyl_sum", &weyl_sum, py::arg("phi"), py::arg("N"),
          "mean of e(phi(n)) over 0 <= n < N");
    m.def("smoothness_norm", &smoothness_norm, py::arg("phi"), py::arg("N"));

    py::class_<dio_approx>(m, "DioApprox")
        .def_readonly("r", &dio_approx::r)
        .def_readonly("residual", &dio_approx::residual);
    m.def("best_denominator", &best_denominator, py::arg("phi"), py::arg("N"),
          py::arg("r_max"), "smallest r minimizing max_i N^(i+1) ||r alpha_i||");

    py::class_<equidist_report>(m, "EquidistReport")
        .def_readonly("delta", &equidist_report::delta)
        .def_readonly("defect", &equidist_report::defect)
        .def_readonly("equidistributed", &equidist_report::equidistributed)
        .def_readonly("witness_start", &equidist_report::witness_start)
        .def_readonly("witness_step", &equidist_report::witness_step)
        .def_readonly("witness_length", &equidist_report::witness_length)
        .def_readonly("witness_freq", &equidist_report::witness_freq);
    m.def("equidist_defect", &equidist_defect, py::arg("phi"), py::arg("N"),
          py::arg("delta"), py::arg("threads") = 1, py::arg("op_budget") = 4e9,
          "worst normalized exponential sum over sub-progressions of length >= delta N");

    /* ----- gowers norms ----- */

    py::enum_<gowers_strategy>(m, "Strategy")
        .value("auto", gowers_strategy::auto_select)
        .value("naive", gowers_strategy::naive)
        .value("fft", gowers_strategy::recursive_fft)
        .value("mean", gowers_strategy::u1_mean);

    py::class_<gowers_result>(m, "GowersResult")
        .def_readonly("k", &gowers_result::k)
        .def_readonly("norm", &gowers_result::norm)
        .def_readonly("raw_numerator", &gowers_result::raw_numerator)
        .def_readonly("normalizer", &gowers_result::normalizer)
        .def_readonly("strategy", &gowers_result::strategy);

    m.def(
        "gowers_norm",
        [](std::vector<cplx> values, int k, gowers_strategy strategy, int threads,
           bool bounded) {
            complex_seq f{std::move(values), bounded};
            return gowers_norm(f, k, strategy, threads);
        },
        py::arg("values"), py::arg("k"), py::arg("strategy") = gowers_strategy::auto_select,
        py::arg("threads") = 1, py::arg("bounded") = true,
        "interval U^k norm of a finite sequence, normalized against the unit function");
    m.def("gowers_norm_in_progression", &gowers_norm_in_progression, py::arg("table"),
          py::arg("q"), py::arg("a"), py::arg("X"), py::arg("k"),
          py::arg("strategy") = gowers_strategy::auto_select, py::arg("threads") = 1,
          "U^k norm of f restricted to n = a (mod q), n <= X");

    /* ----- progressions and correlation sums ----- */

    py::class_<progression_spec>(m, "Progression")
        .def(py::init([](u64 q, u64 a, u64 lo, u64 hi) {
                 return progression_spec{q, a, lo, hi};
             }),
             py::arg("q"), py::arg("a"), py::arg("lo"), py::arg("hi"))
        .def_readonly("q", &progression_spec::q)
        .def_readonly("a", &progression_spec::a)
        .def_readonly("lo", &progression_spec::lo)
        .def_readonly("hi", &progression_spec::hi);

    m.def("correlation_sum", &correlation_sum, py::arg("table"), py::arg("progression"),
          py::arg("phase"), "sum of f(n) e(phase((n-a)/q)) over the progression");
    m.def("max_progression_sum", &max_progression_sum, py::arg("table"), py::arg("q"),
          py::arg("X"), "worst reduced residue: (value, residue)");
    m.def("bv_discrepancy", &bv_discrepancy, py::arg("table"), py::arg("q"), py::arg("X"),
          "worst residue deviation from the coprime mean");

    py::class_<f_entry>(m, "FEntry")
        .def_readonly("prog", &f_entry::prog)
        .def_readonly("phase", &f_entry::phase);

    py::class_<f_spec>(m, "FSpec")
        .def_readonly("Q", &f_spec::Q)
        .def_readonly("X", &f_spec::X)
        .def_readonly("T", &f_spec::T)
        .def_readonly("entries", &f_spec::entries)
        .def_static("random", &f_spec::random, py::arg("Q"), py::arg("X"),
                    py::arg("count"), py::arg("s"), py::arg("seed"),
                    "deterministic random family of progressions with phases");

    m.def("eval_F", &eval_F, py::arg("spec"), py::arg("n"));
    m.def("load_fspec", &load_fspec, py::arg("path"));
    m.def("save_fspec", &save_fspec, py::arg("spec"), py::arg("path"));

    py::class_<bv_row>(m, "BvRow")
        .def_readonly("q", &bv_row::q)
        .def_readonly("a", &bv_row::a)
        .def_readonly("alpha", &bv_row::alpha)
        .def_readonly("value", &bv_row::value)
        .def_readonly("threshold", &bv_row::threshold)
        .def_readonly("exceptional", &bv_row::exceptional);
    py::class_<bv_report>(m, "BvReport")
        .def_readonly("rows", &bv_report::rows)
        .def_readonly("exceptional_count", &bv_report::exceptional_count)
        .def_readonly("mean_value", &bv_report::mean_value)
        .def_readonly("max_value", &bv_report::max_value);
    m.def("exceptional_scan", &exceptional_scan, py::arg("table"), py::arg("Q"),
          py::arg("X"), py::arg("phi_source"), py::arg("eps"), py::arg("restarts") = 4,
          py::arg("seed") = 1, py::arg("threads") = 1, py::arg("full_range") = false,
          "flag moduli in [Q,2Q) whose progression sums resist cancellation");

    /* ----- decay tables ----- */

    py::class_<decay_row>(m, "DecayRow")
        .def_readonly("X", &decay_row::X)
        .def_readonly("Q", &decay_row::Q)
        .def_readonly("mean", &decay_row::mean)
        .def_readonly("max_value", &decay_row::max_value)
        .def_readonly("exceptional_fraction", &decay_row::exceptional_fraction)
        .def_readonly("envelope", &decay_row::envelope);
    m.def("decay_q_rule", &decay_q_rule, py::arg("X"), py::arg("q_exponent"));
    m.def("decay_table", &decay_table, py::arg("table"), py::arg("k"), py::arg("X_grid"),
          py::arg("q_exponent"), py::arg("eps"), py::arg("threads") = 1,
          "worst-progression decay statistics over a grid of ranges");

    /* ----- ramare window ----- */

    py::class_<ramare_window>(m, "RamareWindow")
        .def(py::init([](double Y, double Z) {
                 ramare_window w{Y, Z};
                 w.validate();
                 return w;
             }),
             py::arg("Y"), py::arg("Z"))
        .def_readonly("Y", &ramare_window::Y)
        .def_readonly("Z", &ramare_window::Z);

    py::class_<identity_check>(m, "IdentityCheck")
        .def_readonly("applicable", &identity_check::applicable)
        .def_readonly("expected", &identity_check::expected)
        .def_readonly("pass_", &identity_check::pass)
        .def_property_readonly("lhs",
                               [](const identity_check& c) { return c.lhs.to_double(); });
    m.def("ramare_identity_check", &ramare_identity_check, py::arg("n"), py::arg("window"),
          py::arg("spf"), "exact check of the windowed-prime weight identity at n");
    m.def(
        "ramare_weight",
        [](u64 n, const ramare_window& w, const spf_table& spf) {
            return ramare_weight(n, w, spf).to_double();
        },
        py::arg("n"), py::arg("window"), py::arg("spf"));

    py::class_<coprime_count>(m, "CoprimeCount")
        .def_readonly("count", &coprime_count::count)
        .def_readonly("progression_count", &coprime_count::progression_count)
        .def_readonly("mertens_prediction", &coprime_count::mertens_prediction);
    m.def("coprime_window_count", &coprime_window_count, py::arg("progression"),
          py::arg("window"), "progression elements with no prime factor in the window");

    py::class_<sigma_partition_result>(m, "SigmaPartition")
        .def_readonly("total", &sigma_partition_result::total)
        .def_readonly("part_musq_zero", &sigma_partition_result::part_musq_zero)
        .def_readonly("part_coprime", &sigma_partition_result::part_coprime)
        .def_readonly("part_sigma", &sigma_partition_result::part_sigma)
        .def_readonly("residual", &sigma_partition_result::residual)
        .def_readonly("abs_F_sum", &sigma_partition_result::abs_F_sum)
        .def_readonly("sigma_mroute", &sigma_partition_result::sigma_mroute)
        .def_readonly("sigma_prime", &sigma_partition_result::sigma_prime)
        .def_readonly("rem_musq", &sigma_partition_result::rem_musq)
        .def_readonly("rem_pm", &sigma_partition_result::rem_pm)
        .def_readonly("slices", &sigma_partition_result::slices);
    m.def("sigma_partition", &sigma_partition, py::arg("table"), py::arg("spec"),
          py::arg("window"), py::arg("threads") = 1,
          "exact partition of sum f(n) F(n) through the windowed-prime weights");

    py::class_<cs_gap>(m, "CsGap")
        .def_readonly("lhs", &cs_gap::lhs)
        .def_readonly("rhs", &cs_gap::rhs)
        .def_readonly("ok", &cs_gap::ok)
        .def_readonly("ratio", &cs_gap::ratio);
    m.def("cauchy_schwarz_gap", &cauchy_schwarz_gap, py::arg("table"), py::arg("spec"),
          py::arg("window"), py::arg("P"));

    /* ----- bilinear sums ----- */

    py::class_<merged_congruence>(m, "MergedCongruence")
        .def_readonly("modulus", &merged_congruence::modulus)
        .def_readonly("residue", &merged_congruence::residue);
    m.def("congruence_merge", &congruence_merge, py::arg("k"), py::arg("kp"), py::arg("q"),
          py::arg("qp"), py::arg("a_q"), py::arg("a_qp"),
          "solve k l = a_q (q), k' l = a_qp (q'); None when unsolvable");

    py::class_<typeII_result>(m, "TypeIIResult")
        .def_readonly("value", &typeII_result::value)
        .def_readonly("normalized", &typeII_result::normalized)
        .def_readonly("exceeds", &typeII_result::exceeds);
    m.def(
        "type2_sum",
        [](u64 K, u64 L, u64 Q, double delta, const f_spec& spec, int threads) {
            typeII_config tc;
            tc.K = K;
            tc.L = L;
            tc.Q = Q;
            tc.delta = delta;
            tc.validate();
            std::vector<cplx> F = tabulate_F(spec);
            return typeII_sum(tc, spec, F, threads);
        },
        py::arg("K"), py::arg("L"), py::arg("Q"), py::arg("delta"), py::arg("spec"),
        py::arg("threads") = 1,
        "dyadic bilinear sum of F(kl) conj(F(k'l)) over K <= k,k' < 2K, l <= L");

    /* ----- lcm statistics ----- */

    py::class_<lcm_stats_result>(m, "LcmStats")
        .def_readonly("Q", &lcm_stats_result::Q)
        .def_readonly("R", &lcm_stats_result::R)
        .def_readonly("D", &lcm_stats_result::D)
        .def_readonly("pair_count", &lcm_stats_result::pair_count)
        .def_readonly("histogram", &lcm_stats_result::histogram)
        .def_readonly("sigma", &lcm_stats_result::sigma)
        .def("mult_of", &lcm_stats_result::mult_of, py::arg("q"), py::arg("r"))
        .def("entry_count", &lcm_stats_result::entry_count)
        .def("tail", &lcm_stats_result::tail, py::arg("m0"),
             "pairs whose lcm multiplicity is at least m0");
    m.def("lcm_stats", &lcm_stats, py::arg("Q"), py::arg("R"),
          "lcm multiplicities of modulus pairs from [Q,2Q) with lcm in [R,2R)");
    m.def("sigma_D", &sigma_D, py::arg("q"), py::arg("D"), "divisors of q in [D, 8D]");
    m.def("sigma_D_second_moment", &sigma_D_second_moment, py::arg("Q"), py::arg("D"));

    /* ----- harness ----- */

    m.def(
        "run",
        [](const std::map<std::string, std::string>& kv) {
            experiment_config cfg;
            cfg.kv = kv;
            run_manifest man = run(cfg);
            return py::make_tuple(man.ok, man.text());
        },
        py::arg("config"), "run a pipeline from a config dict; returns (ok, manifest text)");
}
