#include "holonorm/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace holonorm {

std::string format_sig12(double x) {
    if (x == 0.0) return "0";  // also folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round_sig12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

} // namespace holonorm
