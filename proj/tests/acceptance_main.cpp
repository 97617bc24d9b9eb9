// Stand-alone acceptance runner; exit 0 when every criterion passes.
#include "CLI11.hpp"
#include "gnap/harness.hpp"
#include <cstdio>

int main(int argc, char** argv) {
    CLI::App app{"acceptance suites"};
    gnap::acceptance_options opt;
    app.add_option("--out-dir", opt.out_dir, "artifact directory")->capture_default_str();
    app.add_option("--threads", opt.threads, "worker threads")->capture_default_str();
    app.add_option("--seed", opt.seed, "rng seed")->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    try {
        std::vector<gnap::criterion_result> rs = gnap::run_acceptance(opt);
        return gnap::all_passed(rs) ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
