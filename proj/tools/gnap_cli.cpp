// Command-line front end: each subcommand builds an experiment config and
// hands it to run(). Exit codes: 0 success, 1 failed checks or runtime
// error, 2 bad config or violated hypothesis.
#include "CLI11.hpp"
#include "gnap/harness.hpp"
#include <cstdio>

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); i++) {
        char b[40];
        std::snprintf(b, sizeof b, "%.17g", v[i]);
        if (i) s += ',';
        s += b;
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniformity, bilinear, and equidistribution diagnostics for bounded "
                 "multiplicative functions in progressions"};
    app.require_subcommand(1);

    std::string out_dir = "out", cache_dir, config_path;
    int threads = 1;
    gnap::u64 seed = 1;
    auto* o_out = app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    auto* o_cache = app.add_option("--cache-dir", cache_dir, "table cache directory");
    auto* o_threads = app.add_option("--threads", threads, "worker threads")->capture_default_str();
    auto* o_seed = app.add_option("--seed", seed, "global rng seed")->capture_default_str();
    app.add_option("--config", config_path, "key=value config file; flags override it");

    // sieve
    auto* sc_sieve = app.add_subcommand("sieve", "tabulate a function and summarize it");
    std::string sv_function = "mobius";
    gnap::u64 sv_X = 100000;
    auto* o_sv_fn = sc_sieve->add_option("--function", sv_function,
                                         "mobius|liouville|unit|squarefree|random")
                        ->capture_default_str();
    auto* o_sv_X = sc_sieve->add_option("--X", sv_X, "table range")->capture_default_str();

    // gowers
    auto* sc_gow = app.add_subcommand("gowers", "uniformity norms along a progression");
    std::string gw_function = "mobius", gw_k = "2", gw_strategy = "auto";
    gnap::u64 gw_X = 100000, gw_q = 1, gw_a = 0;
    auto* o_gw_fn = sc_gow->add_option("--function", gw_function, "function kind")->capture_default_str();
    auto* o_gw_X = sc_gow->add_option("--X", gw_X, "range")->capture_default_str();
    auto* o_gw_k = sc_gow->add_option("--k", gw_k, "norm orders, comma separated")->capture_default_str();
    auto* o_gw_q = sc_gow->add_option("--q", gw_q, "modulus")->capture_default_str();
    auto* o_gw_a = sc_gow->add_option("--a", gw_a, "residue")->capture_default_str();
    auto* o_gw_st = sc_gow->add_option("--strategy", gw_strategy, "auto|naive|fft|mean")->capture_default_str();

    // bv-scan
    auto* sc_bv = app.add_subcommand("bv-scan", "scan a dyadic modulus window for exceptional progressions");
    std::string bv_function = "mobius";
    gnap::u64 bv_X = 100000, bv_Q = 0;
    double bv_eps = 0.5;
    int bv_degree = 0, bv_restarts = 4;
    bool bv_full = false;
    auto* o_bv_fn = sc_bv->add_option("--function", bv_function, "function kind")->capture_default_str();
    auto* o_bv_X = sc_bv->add_option("--X", bv_X, "range")->capture_default_str();
    sc_bv->add_option("--Q", bv_Q, "modulus window [Q,2Q)")->required();
    auto* o_bv_eps = sc_bv->add_option("--epsilon", bv_eps, "exceptional threshold factor")->capture_default_str();
    auto* o_bv_deg =
        sc_bv->add_option("--phase-degree", bv_degree,
                          "-1 mean discrepancy, 0 plain sums, s>=1 phase sup of degree s")
            ->capture_default_str();
    auto* o_bv_rs = sc_bv->add_option("--restarts", bv_restarts, "ascent restarts per residue")->capture_default_str();
    sc_bv->add_flag("--full-range", bv_full, "scan all q < 2Q instead of [Q,2Q)");

    // ramare-check
    auto* sc_ram = app.add_subcommand("ramare-check", "weight identity, partition, and slice bounds");
    std::string rm_function = "mobius", rm_fspec;
    gnap::u64 rm_X = 10000, rm_Q = 0;
    int rm_entries = 8;
    std::vector<double> rm_window = {10.0, 100.0};
    auto* o_rm_fn = sc_ram->add_option("--function", rm_function, "function kind")->capture_default_str();
    auto* o_rm_X = sc_ram->add_option("--X", rm_X, "range")->capture_default_str();
    auto* o_rm_w = sc_ram->add_option("--window", rm_window, "prime window Y,Z")
                       ->delimiter(',')
                       ->expected(2)
                       ->capture_default_str();
    auto* o_rm_Q = sc_ram->add_option("--Q", rm_Q, "modulus window for the composite spec");
    auto* o_rm_n = sc_ram->add_option("--fspec-entries", rm_entries, "progressions in the random spec")->capture_default_str();
    auto* o_rm_fs = sc_ram->add_option("--fspec", rm_fspec, "composite spec json file");

    // type2
    auto* sc_t2 = app.add_subcommand("type2", "dyadic bilinear sum over the composite function");
    gnap::u64 t2_K = 10, t2_L = 1000, t2_Q = 3;
    double t2_delta = 0.05;
    int t2_entries = 8, t2_degree = 1;
    std::string t2_fspec;
    auto* o_t2_K = sc_t2->add_option("--K", t2_K, "outer dyadic window [K,2K)")->capture_default_str();
    auto* o_t2_L = sc_t2->add_option("--L", t2_L, "inner lattice range")->capture_default_str();
    auto* o_t2_Q = sc_t2->add_option("--Q", t2_Q, "modulus window")->capture_default_str();
    auto* o_t2_d = sc_t2->add_option("--delta", t2_delta, "threshold on the normalized value")->capture_default_str();
    auto* o_t2_n = sc_t2->add_option("--fspec-entries", t2_entries, "progressions in the random spec")->capture_default_str();
    auto* o_t2_s = sc_t2->add_option("--phase-degree", t2_degree, "phase degree in the random spec")->capture_default_str();
    auto* o_t2_fs = sc_t2->add_option("--fspec", t2_fspec, "composite spec json file");

    // equidist
    auto* sc_eq = app.add_subcommand("equidist", "total equidistribution defect and denominator search");
    std::vector<double> eq_alpha;
    double eq_alpha0 = 0.0, eq_delta = 0.1;
    gnap::u64 eq_N = 0, eq_rmax = 0;
    int eq_dio = 3;
    sc_eq->add_option("--alpha", eq_alpha, "phase coefficients, comma separated")
        ->delimiter(',')
        ->required();
    auto* o_eq_a0 = sc_eq->add_option("--alpha0", eq_alpha0, "constant term")->capture_default_str();
    sc_eq->add_option("--N", eq_N, "range")->required();
    auto* o_eq_d = sc_eq->add_option("--delta", eq_delta, "equidistribution parameter")->capture_default_str();
    auto* o_eq_e = sc_eq->add_option("--dio-exponent", eq_dio, "default r_max = ceil(delta^-exponent)")->capture_default_str();
    auto* o_eq_r = sc_eq->add_option("--r-max", eq_rmax, "denominator search bound override");

    // lcm-stats
    auto* sc_lcm = app.add_subcommand("lcm-stats", "lcm multiplicities over a dyadic window");
    gnap::u64 lc_Q = 0, lc_R = 0;
    std::string lc_grid = "1,2,4,8,16";
    sc_lcm->add_option("--Q", lc_Q, "modulus window [Q,2Q)")->required();
    auto* o_lc_R = sc_lcm->add_option("--R", lc_R, "lcm window [R,2R); default Q^2/8");
    auto* o_lc_g = sc_lcm->add_option("--m0-grid", lc_grid, "tail thresholds, comma separated")->capture_default_str();

    // accept
    app.add_subcommand("accept", "run the acceptance suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        gnap::experiment_config cfg;
        if (!config_path.empty()) cfg = gnap::experiment_config::from_file(config_path);
        auto stamp = [&cfg](const CLI::Option* o, const std::string& key, const std::string& val) {
            if ((o && o->count() > 0) || !cfg.has(key)) cfg.set(key, val);
        };
        stamp(o_out, "out_dir", out_dir);
        stamp(o_threads, "threads", std::to_string(threads));
        stamp(o_seed, "seed", std::to_string(seed));
        if (o_cache->count() > 0) cfg.set("cache_dir", cache_dir);

        if (sc_sieve->parsed()) {
            cfg.set("pipeline", "sieve");
            stamp(o_sv_fn, "function", sv_function);
            stamp(o_sv_X, "X", std::to_string(sv_X));
        } else if (sc_gow->parsed()) {
            cfg.set("pipeline", "gowers");
            stamp(o_gw_fn, "function", gw_function);
            stamp(o_gw_X, "X", std::to_string(gw_X));
            stamp(o_gw_k, "k", gw_k);
            stamp(o_gw_q, "q", std::to_string(gw_q));
            stamp(o_gw_a, "a", std::to_string(gw_a));
            stamp(o_gw_st, "strategy", gw_strategy);
        } else if (sc_bv->parsed()) {
            cfg.set("pipeline", "bv-scan");
            stamp(o_bv_fn, "function", bv_function);
            stamp(o_bv_X, "X", std::to_string(bv_X));
            cfg.set("Q", std::to_string(bv_Q));
            stamp(o_bv_eps, "epsilon", join_doubles({bv_eps}));
            stamp(o_bv_deg, "phase_degree", std::to_string(bv_degree));
            stamp(o_bv_rs, "restarts", std::to_string(bv_restarts));
            if (bv_full) cfg.set("full_range", "1");
        } else if (sc_ram->parsed()) {
            cfg.set("pipeline", "ramare-check");
            stamp(o_rm_fn, "function", rm_function);
            stamp(o_rm_X, "X", std::to_string(rm_X));
            stamp(o_rm_w, "window_Y", join_doubles({rm_window[0]}));
            stamp(o_rm_w, "window_Z", join_doubles({rm_window[1]}));
            if (o_rm_Q->count() > 0) cfg.set("Q", std::to_string(rm_Q));
            stamp(o_rm_n, "fspec_entries", std::to_string(rm_entries));
            if (o_rm_fs->count() > 0) cfg.set("fspec", rm_fspec);
        } else if (sc_t2->parsed()) {
            cfg.set("pipeline", "type2");
            stamp(o_t2_K, "K", std::to_string(t2_K));
            stamp(o_t2_L, "L", std::to_string(t2_L));
            stamp(o_t2_Q, "Q", std::to_string(t2_Q));
            stamp(o_t2_d, "delta", join_doubles({t2_delta}));
            stamp(o_t2_n, "fspec_entries", std::to_string(t2_entries));
            stamp(o_t2_s, "phase_degree", std::to_string(t2_degree));
            if (o_t2_fs->count() > 0) cfg.set("fspec", t2_fspec);
        } else if (sc_eq->parsed()) {
            cfg.set("pipeline", "equidist");
            cfg.set("alpha", join_doubles(eq_alpha));
            stamp(o_eq_a0, "alpha0", join_doubles({eq_alpha0}));
            cfg.set("N", std::to_string(eq_N));
            stamp(o_eq_d, "delta", join_doubles({eq_delta}));
            stamp(o_eq_e, "dio_exponent", std::to_string(eq_dio));
            if (o_eq_r->count() > 0) cfg.set("r_max", std::to_string(eq_rmax));
        } else if (sc_lcm->parsed()) {
            cfg.set("pipeline", "lcm-stats");
            cfg.set("Q", std::to_string(lc_Q));
            if (o_lc_R->count() > 0) cfg.set("R", std::to_string(lc_R));
            stamp(o_lc_g, "m0_grid", lc_grid);
        } else {
            cfg.set("pipeline", "accept");
        }

        gnap::run_manifest man = gnap::run(cfg);
        std::printf("wrote %s/manifest.txt (%zu outputs)%s\n", cfg.get("out_dir", "out").c_str(),
                    man.outputs.size(), man.ok ? "" : " [checks failed]");
        return man.ok ? 0 : 1;
    } catch (const gnap::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const gnap::hypothesis_error& e) {
        std::fprintf(stderr, "hypothesis violated: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
