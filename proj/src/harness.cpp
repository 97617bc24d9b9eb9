#include "gnap/harness.hpp"
#include "json.hpp"
#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace gnap {

/* ----- experiment_config ----- */

static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

experiment_config experiment_config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    experiment_config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string k = trim(t.substr(0, eq));
        if (k.empty())
            throw config_error(path + ":" + std::to_string(lineno) + ": empty key");
        cfg.kv[k] = trim(t.substr(eq + 1));
    }
    return cfg;
}

std::string experiment_config::get(const std::string& key, const std::string& dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
}

std::string experiment_config::require(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw config_error("missing config key: " + key);
    return it->second;
}

static u64 parse_u64(const std::string& key, const std::string& s) {
    char* end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || s[0] == '-' || end == s.c_str() || *end != '\0' || errno == ERANGE)
        throw config_error("config key " + key + ": not an unsigned integer: '" + s + "'");
    return (u64)v;
}

static double parse_double(const std::string& key, const std::string& s) {
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end == s.c_str() || *end != '\0' || errno == ERANGE)
        throw config_error("config key " + key + ": not a number: '" + s + "'");
    return v;
}

u64 experiment_config::get_u64(const std::string& key, u64 dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : parse_u64(key, it->second);
}

int experiment_config::get_int(const std::string& key, int dflt) const {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    char* end = nullptr;
    errno = 0;
    long v = std::strtol(it->second.c_str(), &end, 10);
    if (it->second.empty() || end == it->second.c_str() || *end != '\0' || errno == ERANGE)
        throw config_error("config key " + key + ": not an integer: '" + it->second + "'");
    return (int)v;
}

double experiment_config::get_double(const std::string& key, double dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : parse_double(key, it->second);
}

static std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto c = s.find(',', pos);
        if (c == std::string::npos) c = s.size();
        parts.push_back(trim(s.substr(pos, c - pos)));
        pos = c + 1;
    }
    if (parts.size() == 1 && parts[0].empty()) parts.clear();
    return parts;
}

std::vector<u64> experiment_config::get_u64_list(const std::string& key) const {
    std::vector<u64> out;
    for (const auto& p : split_commas(get(key))) out.push_back(parse_u64(key, p));
    return out;
}

std::vector<double> experiment_config::get_double_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& p : split_commas(get(key))) out.push_back(parse_double(key, p));
    return out;
}

/* ----- csv ----- */

static std::string join_cells(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); i++) {
        if (i) line += ',';
        line += cells[i];
    }
    return line;
}

void csv_writer::header(const std::vector<std::string>& cols) {
    buf += join_cells(cols);
    buf += '\n';
}

void csv_writer::row(const std::vector<std::string>& cells) {
    buf += join_cells(cells);
    buf += '\n';
    nrows++;
}

csv_file csv_writer::close() {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open for writing: " + path);
    out.write(buf.data(), (std::streamsize)buf.size());
    out.flush();
    if (!out) throw error("write failed: " + path);
    return {path, fnv1a(buf.data(), buf.size()), nrows};
}

/* ----- manifest ----- */

static std::string hex16(u64 v) {
    char b[17];
    std::snprintf(b, sizeof b, "%016llx", (unsigned long long)v);
    return b;
}

std::string run_manifest::text() const {
    std::string s;
    s += "version=" + std::string(version) + "\n";
    s += "seed=" + std::to_string(seed) + "\n";
    s += "ok=" + std::string(ok ? "1" : "0") + "\n";
    for (const auto& [k, v] : config) s += "config." + k + "=" + v + "\n";
    for (const auto& [name, secs] : stages) {
        char b[32];
        std::snprintf(b, sizeof b, "%.3f", secs);
        s += "stage." + name + "=" + b + "\n";
    }
    for (const auto& f : outputs) {
        std::string base = std::filesystem::path(f.path).filename().string();
        s += "output." + base + "=rows:" + std::to_string(f.rows) + ",fnv1a:" + hex16(f.digest) + "\n";
    }
    return s;
}

void run_manifest::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open for writing: " + path);
    std::string s = text();
    out.write(s.data(), (std::streamsize)s.size());
    if (!out.flush()) throw error("write failed: " + path);
}

/* ----- shared pipeline helpers ----- */

namespace {

struct stage_clock {
    run_manifest& man;
    std::string name;
    double t0;
    stage_clock(run_manifest& m, std::string n) : man(m), name(std::move(n)), t0(wall_time()) {}
    ~stage_clock() { man.stages.emplace_back(name, wall_time() - t0); }
};

arith_table load_table(const experiment_config& cfg, const std::string& function, u64 X, u64 seed) {
    std::string cache = cfg.get("cache_dir");
    fn_kind kind = function == "mobius"      ? fn_kind::mobius
                   : function == "liouville" ? fn_kind::liouville
                   : function == "unit"      ? fn_kind::unit
                                             : fn_kind::custom;
    if (!cache.empty() && kind != fn_kind::custom)
        if (auto t = load_cache(cache, kind, X)) return std::move(*t);
    arith_table t = table_for(function, X, seed);
    if (!cache.empty() && kind != fn_kind::custom) write_cache(cache, t);
    return t;
}

gowers_strategy parse_strategy(const std::string& s) {
    if (s == "auto") return gowers_strategy::auto_select;
    if (s == "naive") return gowers_strategy::naive;
    if (s == "fft" || s == "recursive_fft") return gowers_strategy::recursive_fft;
    if (s == "mean" || s == "u1_mean") return gowers_strategy::u1_mean;
    throw config_error("unknown gowers strategy: " + s);
}

std::string b01(bool v) { return v ? "1" : "0"; }

f_spec fspec_from_config(const experiment_config& cfg, u64 Q_dflt, u64 X, u64 seed) {
    if (cfg.has("fspec")) {
        f_spec s = load_fspec(cfg.require("fspec"));
        if (s.X < X)
            throw coverage_error("fspec covers [0," + std::to_string(s.X) +
                                 "] but the pipeline needs X = " + std::to_string(X));
        return s;
    }
    u64 Q = cfg.get_u64("Q", Q_dflt);
    int count = cfg.get_int("fspec_entries", 8);
    int s = std::max(1, cfg.get_int("phase_degree", 1));
    return f_spec::random(Q, X, count, s, seed);
}

} // namespace

/* ----- decay table ----- */

u64 decay_q_rule(u64 X, double q_exponent) {
    if (X < 40) throw config_error("decay table: X must be at least 40 to fit a modulus window");
    u64 q = (u64)std::llround(std::pow((double)X, q_exponent));
    u64 cap = (u64)std::floor(std::sqrt((double)X / 10.0));
    q = std::min(q, cap);
    return std::max<u64>(q, 2);
}

std::vector<decay_row> decay_table(const arith_table& t, int k,
                                   const std::vector<u64>& X_grid,
                                   double q_exponent, double eps, int threads) {
    if (k < 1) throw config_error("decay table: k must be >= 1");
    if (X_grid.empty()) throw config_error("decay table: empty X grid");
    if (eps <= 0.0) throw config_error("decay table: epsilon must be positive");
    for (std::size_t i = 1; i < X_grid.size(); i++)
        if (X_grid[i] <= X_grid[i - 1])
            throw config_error("decay table: X grid must be strictly increasing");
    if (X_grid.back() > t.X)
        throw coverage_error("decay table: grid exceeds the table range");

    std::vector<decay_row> rows;
    for (u64 X : X_grid) {
        u64 Q = decay_q_rule(X, q_exponent);
        if (10 * Q * Q > X) throw hypothesis_error("decay table: 10 Q^2 <= X violated");
        std::size_t nq = (std::size_t)Q;
        std::vector<double> raw(nq, 0.0), norm(nq, 0.0);
        parallel_for(nq, threads, [&](std::size_t i) {
            u64 q = Q + i;
            if (k == 1) {
                double v = max_progression_sum(t, q, X).first;
                raw[i] = v;
                norm[i] = v * (double)q / (double)X;
            } else {
                double best = 0.0;
                for (u64 a = 0; a < q; a++) {
                    if (std::gcd(a, q) != 1) continue;
                    best = std::max(best, gowers_norm_in_progression(t, q, a, X, k).norm);
                }
                raw[i] = norm[i] = best;
            }
        });
        decay_row r;
        r.X = X;
        r.Q = Q;
        kahan mean;
        u64 exc = 0;
        double threshold = eps * (double)X / (double)Q;
        for (std::size_t i = 0; i < nq; i++) {
            mean.add(norm[i]);
            r.max_value = std::max(r.max_value, norm[i]);
            bool e = k == 1 ? raw[i] >= threshold : raw[i] >= eps;
            exc += e ? 1 : 0;
        }
        r.mean = mean.value() / (double)nq;
        r.exceptional_fraction = (double)exc / (double)nq;
        r.envelope = std::log(std::log((double)X)) / std::log((double)X / ((double)Q * (double)Q));
        rows.push_back(r);
    }
    return rows;
}

/* ----- f_spec json io ----- */

f_spec load_fspec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open fspec file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw config_error("fspec parse error in " + path + ": " + e.what());
    }
    f_spec s;
    try {
        s.X = j.at("X").get<u64>();
        s.Q = j.at("Q").get<u64>();
        for (const auto& je : j.at("entries")) {
            f_entry e;
            e.prog.q = je.at("q").get<u64>();
            e.prog.a = je.at("a").get<u64>();
            e.prog.lo = je.value("lo", (u64)0);
            e.prog.hi = je.value("hi", s.X);
            auto al = je.value("alpha", std::vector<double>{});
            e.phase = poly_phase::from_doubles(al, je.value("alpha0", 0.0));
            s.entries.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw config_error("fspec fields in " + path + ": " + e.what());
    }
    s.refresh();
    s.validate();
    return s;
}

void save_fspec(const f_spec& spec, const std::string& path) {
    nlohmann::json j;
    j["X"] = spec.X;
    j["Q"] = spec.Q;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : spec.entries) {
        nlohmann::json je;
        je["q"] = e.prog.q;
        je["a"] = e.prog.a;
        je["lo"] = e.prog.lo;
        je["hi"] = e.prog.hi;
        std::vector<double> al;
        al.reserve(e.phase.alpha.size());
        for (u64 c : e.phase.alpha) al.push_back(frac64_to_double(c));
        je["alpha"] = al;
        je["alpha0"] = frac64_to_double(e.phase.alpha0);
        j["entries"].push_back(std::move(je));
    }
    std::ofstream out(path);
    if (!out) throw error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
    if (!out.flush()) throw error("write failed: " + path);
}

/* ----- pipelines ----- */

static void pipeline_sieve(const experiment_config& cfg, run_manifest& man,
                           const std::string& out_dir, u64 seed) {
    std::string function = cfg.require("function");
    u64 X = parse_u64("X", cfg.require("X"));
    arith_table t = [&] {
        stage_clock sc(man, "sieve");
        return load_table(cfg, function, X, seed);
    }();
    stage_clock sc(man, "summarize");
    kahan_c sum;
    u64 nonzero = 0;
    for (u64 n = 1; n <= X; n++) {
        cplx v = t.at(n);
        sum.add(v);
        if (v != cplx(0.0, 0.0)) nonzero++;
    }
    csv_writer w(out_dir + "/sieve.csv");
    w.header({"function", "X", "nonzero", "sum_re", "sum_im"});
    w.row({function, std::to_string(X), std::to_string(nonzero),
           fmt_g15(sum.value().real()), fmt_g15(sum.value().imag())});
    man.outputs.push_back(w.close());
}

static void pipeline_gowers(const experiment_config& cfg, run_manifest& man,
                            const std::string& out_dir, u64 seed, int threads) {
    std::string function = cfg.require("function");
    u64 X = parse_u64("X", cfg.require("X"));
    u64 q = cfg.get_u64("q", 1);
    u64 a = cfg.get_u64("a", 0);
    gowers_strategy strat = parse_strategy(cfg.get("strategy", "auto"));
    std::vector<u64> ks = cfg.get_u64_list("k");
    if (ks.empty()) ks = {2};
    arith_table t = [&] {
        stage_clock sc(man, "sieve");
        return load_table(cfg, function, X, seed);
    }();
    csv_writer w(out_dir + "/gowers.csv");
    w.header({"function", "X", "q", "a", "k", "norm", "raw_numerator", "normalizer", "strategy"});
    for (u64 k : ks) {
        stage_clock sc(man, "gowers_k" + std::to_string(k));
        gowers_result r = gowers_norm_in_progression(t, q, a, X, (int)k, strat, threads);
        w.row({function, std::to_string(X), std::to_string(q), std::to_string(a),
               std::to_string(k), fmt_g15(r.norm), fmt_g15(r.raw_numerator),
               fmt_g15(r.normalizer), strategy_name(r.strategy)});
    }
    man.outputs.push_back(w.close());
}

static void pipeline_bv_scan(const experiment_config& cfg, run_manifest& man,
                             const std::string& out_dir, u64 seed, int threads) {
    std::string function = cfg.require("function");
    u64 X = parse_u64("X", cfg.require("X"));
    u64 Q = parse_u64("Q", cfg.require("Q"));
    double eps = cfg.get_double("epsilon", 0.5);
    int phi_source = cfg.get_int("phase_degree", 0);
    int restarts = cfg.get_int("restarts", 4);
    bool full_range = cfg.get_int("full_range", 0) != 0;
    arith_table t = [&] {
        stage_clock sc(man, "sieve");
        return load_table(cfg, function, X, seed);
    }();
    bv_report rep = [&] {
        stage_clock sc(man, "scan");
        return exceptional_scan(t, Q, X, phi_source, eps, restarts, seed, threads, full_range);
    }();
    int s = std::max(0, phi_source);
    std::vector<std::string> cols = {"q", "a"};
    for (int i = 1; i <= s; i++) cols.push_back("alpha_" + std::to_string(i));
    cols.insert(cols.end(), {"value", "threshold", "exceptional"});
    csv_writer w(out_dir + "/bv_scan.csv");
    w.header(cols);
    for (const auto& r : rep.rows) {
        std::vector<std::string> cells = {std::to_string(r.q), std::to_string(r.a)};
        for (int i = 0; i < s; i++)
            cells.push_back(fmt_g15(i < (int)r.alpha.size() ? r.alpha[i] : 0.0));
        cells.insert(cells.end(), {fmt_g15(r.value), fmt_g15(r.threshold), b01(r.exceptional)});
        w.row(cells);
    }
    man.outputs.push_back(w.close());
}

static void pipeline_ramare(const experiment_config& cfg, run_manifest& man,
                            const std::string& out_dir, u64 seed, int threads) {
    std::string function = cfg.get("function", "mobius");
    u64 X = parse_u64("X", cfg.require("X"));
    ramare_window w{cfg.get_double("window_Y", 10.0), cfg.get_double("window_Z", 100.0)};
    w.validate();

    arith_table t = [&] {
        stage_clock sc(man, "sieve");
        return load_table(cfg, function, X, seed);
    }();
    spf_table spf = sieve_spf(X);

    u64 applicable = 0, passed = 0, failed = 0;
    {
        stage_clock sc(man, "identity");
        for (u64 n = 1; n <= X; n++) {
            identity_check c = ramare_identity_check(n, w, spf);
            if (!c.applicable) continue;
            applicable++;
            (c.pass ? passed : failed)++;
        }
    }
    csv_writer wi(out_dir + "/ramare_identity.csv");
    wi.header({"X", "window_Y", "window_Z", "applicable", "passed", "failed"});
    wi.row({std::to_string(X), fmt_g15(w.Y), fmt_g15(w.Z), std::to_string(applicable),
            std::to_string(passed), std::to_string(failed)});
    man.outputs.push_back(wi.close());

    f_spec spec = fspec_from_config(cfg, decay_q_rule(X, 0.4), X, seed);
    sigma_partition_result part = [&] {
        stage_clock sc(man, "partition");
        return sigma_partition(t, spec, w, threads);
    }();
    csv_writer wp(out_dir + "/ramare_partition.csv");
    wp.header({"component", "re", "im"});
    auto crow = [&](const char* label, cplx z) {
        wp.row({label, fmt_g15(z.real()), fmt_g15(z.imag())});
    };
    crow("total", part.total);
    crow("musq_zero", part.part_musq_zero);
    crow("coprime", part.part_coprime);
    crow("sigma", part.part_sigma);
    crow("sigma_mroute", part.sigma_mroute);
    crow("sigma_prime", part.sigma_prime);
    crow("rem_musq", part.rem_musq);
    crow("rem_pm", part.rem_pm);
    wp.row({"residual", fmt_g15(part.residual), fmt_g15(0.0)});
    wp.row({"abs_F_sum", fmt_g15(part.abs_F_sum), fmt_g15(0.0)});
    for (const auto& [P, z] : part.slices)
        wp.row({"slice_" + std::to_string((u64)P), fmt_g15(z.real()), fmt_g15(z.imag())});
    man.outputs.push_back(wp.close());

    bool cs_all_ok = true;
    {
        stage_clock sc(man, "cauchy_schwarz");
        csv_writer wc(out_dir + "/ramare_cs.csv");
        wc.header({"P", "lhs", "rhs", "ratio", "ok"});
        for (double P = w.Y; P < w.Z; P *= 2.0) {
            cs_gap g = cauchy_schwarz_gap(t, spec, w, P);
            cs_all_ok = cs_all_ok && g.ok;
            wc.row({fmt_g15(P), fmt_g15(g.lhs), fmt_g15(g.rhs), fmt_g15(g.ratio), b01(g.ok)});
        }
        man.outputs.push_back(wc.close());
    }

    double tol = 1e-9 * (1.0 + part.abs_F_sum);
    man.ok = failed == 0 && part.residual <= tol && cs_all_ok;
}

static void pipeline_type2(const experiment_config& cfg, run_manifest& man,
                           const std::string& out_dir, u64 seed, int threads) {
    typeII_config tc;
    tc.K = cfg.get_u64("K", 10);
    tc.L = cfg.get_u64("L", 1000);
    tc.Q = cfg.get_u64("Q", 3);
    tc.delta = cfg.get_double("delta", 0.05);
    tc.validate();
    u64 X = 4 * tc.K * tc.L;
    f_spec spec = fspec_from_config(cfg, tc.Q, X, seed);
    typeII_result r = [&] {
        stage_clock sc(man, "type2");
        std::vector<cplx> F = tabulate_F(spec);
        return typeII_sum(tc, spec, F, threads);
    }();
    csv_writer w(out_dir + "/type2.csv");
    w.header({"K", "L", "Q", "delta", "value", "normalized", "exceeds"});
    w.row({std::to_string(tc.K), std::to_string(tc.L), std::to_string(tc.Q),
           fmt_g15(tc.delta), fmt_g15(r.value), fmt_g15(r.normalized), b01(r.exceeds)});
    man.outputs.push_back(w.close());
}

static void pipeline_equidist(const experiment_config& cfg, run_manifest& man,
                              const std::string& out_dir, int threads) {
    std::vector<double> alphas = cfg.get_double_list("alpha");
    if (alphas.empty()) throw config_error("equidist: need at least one alpha coefficient");
    poly_phase phi = poly_phase::from_doubles(alphas, cfg.get_double("alpha0", 0.0));
    u64 N = parse_u64("N", cfg.require("N"));
    double delta = cfg.get_double("delta", 0.1);
    if (delta <= 0.0 || delta >= 1.0) throw config_error("equidist: delta must lie in (0,1)");
    int dio_exponent = cfg.get_int("dio_exponent", 3);
    u64 r_max = cfg.get_u64("r_max", (u64)std::ceil(std::pow(delta, -dio_exponent)));

    equidist_report rep = [&] {
        stage_clock sc(man, "defect");
        return equidist_defect(phi, N, delta, threads);
    }();
    dio_approx best = [&] {
        stage_clock sc(man, "denominator");
        return best_denominator(phi, N, r_max);
    }();
    csv_writer w(out_dir + "/equidist.csv");
    w.header({"N", "delta", "defect", "equidistributed", "witness_start", "witness_step",
              "witness_length", "witness_freq", "best_r", "best_residual"});
    w.row({std::to_string(N), fmt_g15(delta), fmt_g15(rep.defect), b01(rep.equidistributed),
           std::to_string(rep.witness_start), std::to_string(rep.witness_step),
           std::to_string(rep.witness_length), std::to_string(rep.witness_freq),
           std::to_string(best.r), fmt_g15(best.residual)});
    man.outputs.push_back(w.close());
}

static void pipeline_lcm_stats(const experiment_config& cfg, run_manifest& man,
                               const std::string& out_dir) {
    u64 Q = parse_u64("Q", cfg.require("Q"));
    u64 R = cfg.get_u64("R", std::max(Q, Q * Q / 8));
    std::vector<u64> m0s = cfg.get_u64_list("m0_grid");
    if (m0s.empty()) m0s = {1, 2, 4, 8, 16};
    lcm_stats_result st = [&] {
        stage_clock sc(man, "enumerate");
        return lcm_stats(Q, R);
    }();
    csv_writer w(out_dir + "/lcm_stats.csv");
    w.header({"Q", "R", "D", "pair_count", "m0", "tail"});
    for (u64 m0 : m0s)
        w.row({std::to_string(Q), std::to_string(R), fmt_g15(st.D),
               std::to_string(st.pair_count), std::to_string(m0), std::to_string(st.tail(m0))});
    man.outputs.push_back(w.close());
    csv_writer wh(out_dir + "/lcm_hist.csv");
    wh.header({"multiplicity", "pairs"});
    for (const auto& [m, cnt] : st.histogram)
        wh.row({std::to_string(m), std::to_string(cnt)});
    man.outputs.push_back(wh.close());
}

static void pipeline_accept(const experiment_config& cfg, run_manifest& man,
                            const std::string& out_dir, u64 seed, int threads) {
    acceptance_options opt;
    opt.out_dir = out_dir;
    opt.threads = threads;
    opt.seed = seed;
    (void)cfg;
    std::vector<criterion_result> rs = run_acceptance(opt);
    csv_writer w(out_dir + "/accept.csv");
    w.header({"id", "name", "pass"});
    for (const auto& r : rs) {
        w.row({std::to_string(r.id), r.name, b01(r.pass)});
        man.stages.emplace_back("criterion_" + std::to_string(r.id), r.seconds);
    }
    man.outputs.push_back(w.close());
    man.ok = all_passed(rs);
}

run_manifest run(const experiment_config& cfg) {
    std::string pipeline = cfg.require("pipeline");
    std::string out_dir = cfg.get("out_dir", "out");
    int threads = cfg.get_int("threads", 1);
    u64 seed = cfg.get_u64("seed", 1);
    if (threads < 1) throw config_error("threads must be >= 1");

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw config_error("cannot create out_dir " + out_dir + ": " + ec.message());

    run_manifest man;
    man.seed = seed;
    for (const auto& [k, v] : cfg.kv) man.config.emplace_back(k, v);

    if (pipeline == "sieve")
        pipeline_sieve(cfg, man, out_dir, seed);
    else if (pipeline == "gowers")
        pipeline_gowers(cfg, man, out_dir, seed, threads);
    else if (pipeline == "bv-scan")
        pipeline_bv_scan(cfg, man, out_dir, seed, threads);
    else if (pipeline == "ramare-check")
        pipeline_ramare(cfg, man, out_dir, seed, threads);
    else if (pipeline == "type2")
        pipeline_type2(cfg, man, out_dir, seed, threads);
    else if (pipeline == "equidist")
        pipeline_equidist(cfg, man, out_dir, threads);
    else if (pipeline == "lcm-stats")
        pipeline_lcm_stats(cfg, man, out_dir);
    else if (pipeline == "accept")
        pipeline_accept(cfg, man, out_dir, seed, threads);
    else
        throw config_error("unknown pipeline: " + pipeline);

    man.write(out_dir + "/manifest.txt");
    return man;
}

} // namespace gnap
