#include "gnap/common.hpp"
#include <chrono>
#include <cstdio>

namespace gnap {

std::string fmt_g15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string format_hms(double seconds) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3fs", seconds);
    return buf;
}

double wall_time() {
    using clk = std::chrono::steady_clock;
    static const clk::time_point t0 = clk::now();
    return std::chrono::duration<double>(clk::now() - t0).count();
}

} // namespace gnap
