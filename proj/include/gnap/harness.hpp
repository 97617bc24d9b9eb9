#pragma once
// Experiment configs (line-oriented key=value), CSV emission with stable
// 15-digit formatting and content digests, run manifests, the pipelines
// behind the CLI subcommands, and the acceptance-suite runner.
#include "gnap/bilinear.hpp"
#include "gnap/ramare.hpp"
#include <map>

namespace gnap {

constexpr const char* tool_version = "0.1.0";

/* ----- configuration ----- */

struct experiment_config {
    std::map<std::string, std::string> kv;

    static experiment_config from_file(const std::string& path);

    void set(const std::string& key, const std::string& value) { kv[key] = value; }
    bool has(const std::string& key) const { return kv.count(key) != 0; }
    std::string get(const std::string& key, const std::string& dflt = "") const;
    std::string require(const std::string& key) const;
    u64 get_u64(const std::string& key, u64 dflt) const;
    int get_int(const std::string& key, int dflt) const;
    double get_double(const std::string& key, double dflt) const;
    // comma-separated numeric lists
    std::vector<u64> get_u64_list(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
};

/* ----- csv output ----- */

struct csv_file {
    std::string path;
    u64 digest = 0; // fnv-1a of the full byte content
    u64 rows = 0;
};

// buffers the whole file, then writes and digests it on close
struct csv_writer {
    std::string path, buf;
    u64 nrows = 0;
    explicit csv_writer(std::string p) : path(std::move(p)) {}
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<std::string>& cells);
    csv_file close();
};

/* ----- run manifest ----- */

struct run_manifest {
    std::string version = tool_version;
    std::vector<std::pair<std::string, std::string>> config; // key-sorted snapshot
    u64 seed = 1;
    std::vector<std::pair<std::string, double>> stages; // (name, seconds)
    std::vector<csv_file> outputs;
    bool ok = true;

    std::string text() const;
    void write(const std::string& path) const;
};

// dispatch on cfg "pipeline"; writes CSVs and manifest.txt under "out_dir"
run_manifest run(const experiment_config& cfg);

/* ----- decay table ----- */

struct decay_row {
    u64 X = 0, Q = 0;
    double mean = 0.0;                 // mean over q in [Q,2Q) of the normalized value
    double max_value = 0.0;            // max normalized value
    double exceptional_fraction = 0.0; // fraction with value >= eps X/Q (k=1) / norm >= eps (k>=2)
    double envelope = 0.0;             // log log X / log(X/Q^2)
};

// Q-rule: round(X^q_exponent) clamped so 10 Q^2 <= X keeps holding.
u64 decay_q_rule(u64 X, double q_exponent);

// k = 1: worst reduced-residue progression sum, normalized by q/X;
// k >= 2: worst reduced-residue progression uniformity norm.
std::vector<decay_row> decay_table(const arith_table& t, int k,
                                   const std::vector<u64>& X_grid,
                                   double q_exponent, double eps, int threads = 1);

/* ----- f_spec json io ----- */

f_spec load_fspec(const std::string& path);
void save_fspec(const f_spec& spec, const std::string& path);

/* ----- acceptance runner ----- */

struct acceptance_options {
    std::string out_dir = "accept_out";
    int threads = 1;
    u64 seed = 1;
};

struct criterion_result {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    double budget = 0.0; // wall-clock budget, part of the pass condition
    std::string detail;
};

// the eight acceptance suites; prints one pass/fail line per criterion
std::vector<criterion_result> run_acceptance(const acceptance_options& opt);
bool all_passed(const std::vector<criterion_result>& rs);

} // namespace gnap
